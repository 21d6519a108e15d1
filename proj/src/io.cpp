#include "procunc/io.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace procunc {
namespace io {

namespace {

double finite_number(const json& j, const char* context) {
  if (!j.is_number()) throw ParseError(std::string(context) + ": expected a number");
  double v = j.get<double>();
  if (!std::isfinite(v)) throw ParseError(std::string(context) + ": non-finite number");
  return v;
}

json number_or_string(double v) {
  if (std::isfinite(v)) return json(v);
  if (std::isnan(v)) return json("nan");
  return json(v > 0 ? "inf" : "-inf");
}

double order_from_json(const json& j) {
  if (j.is_string()) {
    std::string s = j.get<std::string>();
    if (s == "inf" || s == "infinity") return kInfiniteOrder;
    throw ParseError("alpha_beta_pairs: unknown order '" + s + "'");
  }
  return finite_number(j, "alpha_beta_pairs");
}

json order_to_json(double v) {
  if (std::isinf(v)) return json("inf");
  return json(v);
}

}  // namespace

Matrix matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw ParseError("matrix: expected a non-empty array of rows");
  const size_t rows = j.size();
  const size_t cols = j[0].is_array() ? j[0].size() : 0;
  if (cols == 0) throw ParseError("matrix: empty row");
  Matrix m(static_cast<Index>(rows), static_cast<Index>(cols));
  for (size_t r = 0; r < rows; ++r) {
    if (!j[r].is_array() || j[r].size() != cols) {
      throw ParseError("matrix: ragged rows");
    }
    for (size_t c = 0; c < cols; ++c) {
      const json& e = j[r][c];
      if (!e.is_array() || e.size() != 2) {
        throw ParseError("matrix: entries must be [re, im] pairs");
      }
      m(static_cast<Index>(r), static_cast<Index>(c)) =
          Complex(finite_number(e[0], "matrix entry"), finite_number(e[1], "matrix entry"));
    }
  }
  return m;
}

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Index c = 0; c < m.cols(); ++c) {
      row.push_back(json::array({m(r, c).real(), m(r, c).imag()}));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

namespace {

SystemShape shape_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw ParseError("dims: expected a non-empty array");
  std::vector<Index> dims;
  for (const json& d : j) {
    if (!d.is_number_integer() || d.get<Index>() < 1) {
      throw ParseError("dims: factors must be positive integers");
    }
    dims.push_back(d.get<Index>());
  }
  return SystemShape{std::move(dims)};
}

json shape_to_json(const SystemShape& s) {
  json out = json::array();
  for (Index d : s.dims) out.push_back(d);
  return out;
}

const json& require_field(const json& j, const char* key, const char* context) {
  auto it = j.find(key);
  if (it == j.end()) {
    throw ParseError(std::string(context) + ": missing field '" + key + "'");
  }
  return *it;
}

ObjectDiagnostic validate_state(const std::string& name, const Matrix& m,
                                const SystemShape& shape) {
  ObjectDiagnostic d{"state", name, false, "", {}};
  if (m.rows() != m.cols() || shape.total() != m.rows()) {
    d.message = "shape/dimension mismatch";
    return d;
  }
  d.residuals["hermiticity"] = hermiticity_residual(m);
  if (d.residuals["hermiticity"] > tol::herm) {
    d.message = "not Hermitian";
    return d;
  }
  d.residuals["min_eigenvalue"] = min_eig(m);
  d.residuals["trace_deviation"] = std::abs(m.trace().real() - 1.0);
  if (d.residuals["min_eigenvalue"] < -tol::psd) {
    d.message = "min eigenvalue " + std::to_string(d.residuals["min_eigenvalue"]);
    return d;
  }
  if (d.residuals["trace_deviation"] > tol::trace_one) {
    d.message = "trace deviates from 1 by " + std::to_string(d.residuals["trace_deviation"]);
    return d;
  }
  d.pass = true;
  return d;
}

ObjectDiagnostic validate_povm(const std::string& name, const std::vector<Matrix>& effects,
                               const SystemShape& shape) {
  ObjectDiagnostic d{"povm", name, false, "", {}};
  if (effects.empty()) {
    d.message = "no effects";
    return d;
  }
  const Index dim = effects.front().rows();
  if (shape.total() != dim) {
    d.message = "shape/dimension mismatch";
    return d;
  }
  Matrix sum = Matrix::Zero(dim, dim);
  double worst_herm = 0.0, worst_lo = 0.0, worst_hi = 1.0;
  for (const Matrix& e : effects) {
    if (e.rows() != dim || e.cols() != dim) {
      d.message = "effect dimension mismatch";
      return d;
    }
    worst_herm = std::max(worst_herm, hermiticity_residual(e));
    if (worst_herm > tol::herm) {
      d.message = "effect not Hermitian";
      return d;
    }
    worst_lo = std::min(worst_lo, min_eig(e));
    worst_hi = std::max(worst_hi, max_eig(e));
    sum += e;
  }
  d.residuals["hermiticity"] = worst_herm;
  d.residuals["min_eigenvalue"] = worst_lo;
  d.residuals["max_eigenvalue"] = worst_hi;
  d.residuals["completeness"] = max_abs(sum - Matrix::Identity(dim, dim));
  if (worst_lo < -tol::psd || worst_hi > 1.0 + tol::psd) {
    d.message = "effect outside [0, 1]";
    return d;
  }
  if (d.residuals["completeness"] > tol::effect_sum) {
    d.message = "effects do not sum to the identity";
    return d;
  }
  d.pass = true;
  return d;
}

}  // namespace

bool InputDocument::all_valid() const {
  for (const ObjectDiagnostic& d : diagnostics) {
    if (!d.pass) return false;
  }
  return true;
}

Tester InputDocument::build_named_tester(const std::string& name) const {
  auto it = tester_specs.find(name);
  if (it == tester_specs.end()) throw ParseError("unknown tester '" + name + "'");
  auto st = states.find(it->second.input_state);
  if (st == states.end()) {
    throw ParseError("tester '" + name + "': input state '" + it->second.input_state +
                     "' is missing or failed validation");
  }
  auto pv = povms.find(it->second.povm);
  if (pv == povms.end()) {
    throw ParseError("tester '" + name + "': POVM '" + it->second.povm +
                     "' is missing or failed validation");
  }
  return build_tester(st->second, pv->second);
}

namespace {

CampaignSpec campaign_from_json(const json& j) {
  CampaignSpec spec;
  CampaignConfig& c = spec.config;
  if (j.contains("seed")) c.seed = j["seed"].get<std::uint64_t>();
  if (j.contains("samples")) c.samples = j["samples"].get<int>();
  if (j.contains("dims")) {
    SystemShape s = shape_from_json(j["dims"]);
    if (s.factors() != 3) throw ParseError("campaign.dims: expected [d_R, d_A, d_B]");
    c.d_R = s.dims[0];
    c.d_A = s.dims[1];
    c.d_B = s.dims[2];
  }
  if (j.contains("env_dim")) c.env_dim = j["env_dim"].get<Index>();
  if (j.contains("alpha_beta_pairs")) {
    c.alpha_beta_pairs.clear();
    for (const json& p : j["alpha_beta_pairs"]) {
      if (!p.is_array() || p.size() != 2) {
        throw ParseError("campaign.alpha_beta_pairs: expected [alpha, beta] pairs");
      }
      c.alpha_beta_pairs.push_back({order_from_json(p[0]), order_from_json(p[1])});
    }
  }
  if (j.contains("tolerances")) {
    const json& t = j["tolerances"];
    if (t.contains("mu_slack")) c.tolerances.mu_slack = t["mu_slack"].get<double>();
    if (t.contains("uur_slack")) c.tolerances.uur_slack = t["uur_slack"].get<double>();
    if (t.contains("tightness_gap")) {
      c.tolerances.tightness_gap = t["tightness_gap"].get<double>();
    }
  }
  if (j.contains("enumeration_cap")) c.enumeration_cap = j["enumeration_cap"].get<int>();
  if (j.contains("threads")) c.threads = j["threads"].get<int>();
  if (j.contains("run_tightness")) c.run_tightness = j["run_tightness"].get<bool>();
  if (j.contains("run_conjecture")) c.run_conjecture = j["run_conjecture"].get<bool>();
  if (j.contains("conjecture_terms")) c.conjecture_terms = j["conjecture_terms"].get<int>();
  if (j.contains("overlap_exclude_complement")) {
    c.overlap_exclude_complement = j["overlap_exclude_complement"].get<bool>();
  }
  if (c.samples < 1) throw ParseError("campaign.samples: must be >= 1");
  if (c.d_R < 1 || c.d_A < 1 || c.d_B < 1) throw ParseError("campaign.dims: must be >= 1");
  for (const AlphaBetaPair& ab : c.alpha_beta_pairs) {
    if (!harmonic_pair(ab.alpha, ab.beta)) {
      throw ParseError("campaign.alpha_beta_pairs: 1/α + 1/β = 2 violated");
    }
  }
  if (j.contains("testers")) {
    const json& t = j["testers"];
    if (!t.is_array() || t.size() != 2) {
      throw ParseError("campaign.testers: expected two tester names");
    }
    spec.tester_names = {t[0].get<std::string>(), t[1].get<std::string>()};
  }
  if (j.contains("tester_outcomes")) {
    const json& t = j["tester_outcomes"];
    if (!t.is_array() || t.size() != 2) {
      throw ParseError("campaign.tester_outcomes: expected [m, n]");
    }
    spec.random_outcomes_1 = t[0].get<Index>();
    spec.random_outcomes_2 = t[1].get<Index>();
  }
  return spec;
}

}  // namespace

json campaign_spec_to_json(const CampaignSpec& spec) {
  const CampaignConfig& c = spec.config;
  json j;
  j["seed"] = c.seed;
  j["samples"] = c.samples;
  j["dims"] = json::array({c.d_R, c.d_A, c.d_B});
  j["env_dim"] = c.env_dim;
  json pairs = json::array();
  for (const AlphaBetaPair& ab : c.alpha_beta_pairs) {
    pairs.push_back(json::array({order_to_json(ab.alpha), order_to_json(ab.beta)}));
  }
  j["alpha_beta_pairs"] = std::move(pairs);
  j["tolerances"] = {{"mu_slack", c.tolerances.mu_slack},
                     {"uur_slack", c.tolerances.uur_slack},
                     {"tightness_gap", c.tolerances.tightness_gap}};
  j["enumeration_cap"] = c.enumeration_cap;
  j["threads"] = c.threads;
  j["run_tightness"] = c.run_tightness;
  j["run_conjecture"] = c.run_conjecture;
  j["conjecture_terms"] = c.conjecture_terms;
  j["overlap_exclude_complement"] = c.overlap_exclude_complement;
  if (spec.tester_names) {
    j["testers"] = json::array({spec.tester_names->first, spec.tester_names->second});
  } else {
    j["tester_outcomes"] = json::array({spec.random_outcomes_1, spec.random_outcomes_2});
  }
  return j;
}

namespace {
InputDocument load_document_impl(const json& j);
}  // namespace

InputDocument load_document(std::istream& in) {
  json j;
  try {
    j = json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("JSON parse error: ") + e.what());
  }
  try {
    return load_document_impl(j);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("document schema error: ") + e.what());
  }
}

namespace {
InputDocument load_document_impl(const json& j) {
  if (!j.is_object()) throw ParseError("document: expected a JSON object");

  InputDocument doc;
  if (j.contains("version")) {
    if (!j["version"].is_string()) throw ParseError("version: expected a string");
    doc.version = j["version"].get<std::string>();
    if (doc.version != "1") throw ParseError("version: unrecognized '" + doc.version + "'");
  }

  if (j.contains("states")) {
    for (const auto& [name, body] : j["states"].items()) {
      SystemShape shape = shape_from_json(require_field(body, "dims", "state"));
      Matrix m = matrix_from_json(require_field(body, "matrix", "state"));
      ObjectDiagnostic d = validate_state(name, m, shape);
      if (d.pass) {
        doc.states.emplace(name, DensityOperator{shape, std::move(m)});
      }
      doc.diagnostics.push_back(std::move(d));
    }
  }
  if (j.contains("povms")) {
    for (const auto& [name, body] : j["povms"].items()) {
      SystemShape shape = shape_from_json(require_field(body, "dims", "povm"));
      std::vector<Matrix> effects;
      for (const json& e : require_field(body, "effects", "povm")) {
        effects.push_back(matrix_from_json(e));
      }
      ObjectDiagnostic d = validate_povm(name, effects, shape);
      if (d.pass) {
        doc.povms.emplace(name, Povm{shape, std::move(effects)});
      }
      doc.diagnostics.push_back(std::move(d));
    }
  }
  if (j.contains("channels")) {
    for (const auto& [name, body] : j["channels"].items()) {
      Index d_in = require_field(body, "d_in", "channel").get<Index>();
      Index d_out = require_field(body, "d_out", "channel").get<Index>();
      if (d_in < 1 || d_out < 1) throw ParseError("channel: dimensions must be >= 1");
      std::optional<std::vector<Matrix>> kraus;
      std::optional<Matrix> choi;
      if (body.contains("kraus")) {
        kraus.emplace();
        for (const json& k : body["kraus"]) kraus->push_back(matrix_from_json(k));
      }
      if (body.contains("choi")) choi = matrix_from_json(body["choi"]);
      if (!kraus && !choi) throw ParseError("channel '" + name + "': no representation");

      ObjectDiagnostic d{"channel", name, false, "", {}};
      try {
        QuantumChannel ch = QuantumChannel::make(std::move(kraus), std::move(choi),
                                                 d_in, d_out);
        CptpReport r = validate_cptp(ch);
        d.residuals["cp_min_eigenvalue"] = r.cp_residual;
        d.residuals["tp_residual"] = r.tp_residual;
        d.residuals["representation_residual"] = r.rep_residual;
        d.pass = r.ok();
        if (!d.pass) d.message = "CPTP validation failed";
        if (d.pass) doc.channels.emplace(name, std::move(ch));
      } catch (const ValidationError& e) {
        d.message = e.what();
      }
      doc.diagnostics.push_back(std::move(d));
    }
  }
  if (j.contains("testers")) {
    for (const auto& [name, body] : j["testers"].items()) {
      TesterSpec spec{require_field(body, "input_state", "tester").get<std::string>(),
                      require_field(body, "povm", "tester").get<std::string>()};
      ObjectDiagnostic d{"tester", name, false, "", {}};
      doc.tester_specs.emplace(name, spec);
      try {
        Tester t = doc.build_named_tester(name);
        Matrix sum = Matrix::Zero(t.d_A * t.d_B, t.d_A * t.d_B);
        for (const Matrix& e : t.effects) sum += e;
        d.residuals["completeness"] =
            max_abs(sum - tensor(t.reduced_input, Matrix::Identity(t.d_B, t.d_B)));
        d.pass = true;
      } catch (const std::exception& e) {
        d.message = e.what();
      }
      doc.diagnostics.push_back(std::move(d));
    }
  }
  if (j.contains("campaign")) {
    doc.campaign = campaign_from_json(j["campaign"]);
    if (doc.campaign->tester_names) {
      const auto& [t1, t2] = *doc.campaign->tester_names;
      if (!doc.tester_specs.count(t1) || !doc.tester_specs.count(t2)) {
        throw ParseError("campaign.testers: unresolved tester name");
      }
    }
  }
  return doc;
}
}  // namespace

InputDocument load_document_file(const std::string& path) {
  if (path == "-") return load_document(std::cin);
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  return load_document(in);
}

json document_to_json(const InputDocument& doc) {
  json j;
  j["version"] = doc.version;
  if (!doc.states.empty()) {
    json states;
    for (const auto& [name, s] : doc.states) {
      states[name] = {{"dims", shape_to_json(s.shape)}, {"matrix", matrix_to_json(s.op)}};
    }
    j["states"] = std::move(states);
  }
  if (!doc.povms.empty()) {
    json povms;
    for (const auto& [name, p] : doc.povms) {
      json effects = json::array();
      for (const Matrix& e : p.effects) effects.push_back(matrix_to_json(e));
      povms[name] = {{"dims", shape_to_json(p.shape)}, {"effects", std::move(effects)}};
    }
    j["povms"] = std::move(povms);
  }
  if (!doc.channels.empty()) {
    json channels;
    for (const auto& [name, c] : doc.channels) {
      json body;
      body["d_in"] = c.d_in;
      body["d_out"] = c.d_out;
      if (c.kraus) {
        json kraus = json::array();
        for (const Matrix& k : *c.kraus) kraus.push_back(matrix_to_json(k));
        body["kraus"] = std::move(kraus);
      }
      body["choi"] = matrix_to_json(c.choi);
      channels[name] = std::move(body);
    }
    j["channels"] = std::move(channels);
  }
  if (!doc.tester_specs.empty()) {
    json testers;
    for (const auto& [name, t] : doc.tester_specs) {
      testers[name] = {{"input_state", t.input_state}, {"povm", t.povm}};
    }
    j["testers"] = std::move(testers);
  }
  if (doc.campaign) j["campaign"] = campaign_spec_to_json(*doc.campaign);
  return j;
}

namespace {

json vector_to_json(const std::vector<double>& v) {
  json out = json::array();
  for (double x : v) out.push_back(x);
  return out;
}

json scaled_entropy(double bits, double log_base) {
  return number_or_string(bits / std::log2(log_base));
}

}  // namespace

json uur_report_to_json(const UurReport& rep) {
  return json{{"oplus_vs_s", rep.oplus_vs_s},
              {"oplus_vs_flat_s", rep.oplus_vs_flat_s},
              {"otimes_vs_t", rep.otimes_vs_t},
              {"otimes_vs_flat_t", rep.otimes_vs_flat_t},
              {"flat_s_vs_sorted_s", rep.flat_s_vs_sorted_s},
              {"flat_t_vs_sorted_t", rep.flat_t_vs_sorted_t}};
}

json bound_report_to_json(const BoundVectors& bounds, const OverlapTable& table,
                          double overlap_used, double log_base) {
  json j;
  j["m"] = bounds.m;
  j["n"] = bounds.n;
  j["log_base"] = log_base;
  json rows = json::array();
  for (Index x = 0; x < table.entries.rows(); ++x) {
    json row = json::array();
    for (Index y = 0; y < table.entries.cols(); ++y) row.push_back(table.entries(x, y));
    rows.push_back(std::move(row));
  }
  j["overlap_table"] = std::move(rows);
  j["max_overlap"] = table.max_overlap;
  j["overlap_used"] = overlap_used;
  j["renyi_bound"] = scaled_entropy(-2.0 * std::log2(std::max(overlap_used, 1e-300)),
                                    log_base);
  j["s_cumulative"] = vector_to_json(bounds.s_cumulative);
  j["s"] = vector_to_json(bounds.s);
  j["s_flat"] = vector_to_json(bounds.s_flat);
  j["t_cumulative"] = vector_to_json(bounds.t_cumulative);
  j["t"] = vector_to_json(bounds.t);
  j["t_flat"] = vector_to_json(bounds.t_flat);
  json subsets = json::array();
  for (const auto& s : bounds.argmax_subsets) {
    json one = json::array();
    for (int z : s) one.push_back(z);
    subsets.push_back(std::move(one));
  }
  j["argmax_subsets"] = std::move(subsets);
  json hmin = json::array();
  for (double v : bounds.s_cumulative) {
    hmin.push_back(v > 0 ? number_or_string(-std::log2(v) / std::log2(log_base))
                         : json("inf"));
  }
  j["hmin_values"] = std::move(hmin);
  j["sdp_gaps"] = vector_to_json(bounds.sdp_gaps);
  return j;
}

json campaign_report_to_json(const CampaignReport& report, const CampaignSpec& spec,
                             double log_base) {
  json j;
  j["config"] = campaign_spec_to_json(spec);
  j["samples"] = report.samples;
  j["m"] = report.m;
  j["n"] = report.n;
  j["max_overlap"] = report.overlap;
  j["renyi_bound"] = scaled_entropy(report.mu_rhs, log_base);
  json mu = json::array();
  for (const PairSlackSummary& s : report.mu) {
    mu.push_back({{"alpha", order_to_json(s.alpha)},
                  {"beta", order_to_json(s.beta)},
                  {"min_slack", number_or_string(s.min_slack)},
                  {"argmin_sample", s.argmin_sample},
                  {"violations", s.violations}});
  }
  j["theorem1"] = std::move(mu);
  j["uur_min_slacks"] = uur_report_to_json(report.uur_min);
  j["uur_argmin_sample"] = report.uur_argmin_sample;
  j["theorem2_violations"] = report.theorem2_violations;
  j["theorem3_violations"] = report.theorem3_violations;
  j["s_cumulative"] = vector_to_json(report.bounds.s_cumulative);
  j["s"] = vector_to_json(report.bounds.s);
  j["s_flat"] = vector_to_json(report.bounds.s_flat);
  j["t_cumulative"] = vector_to_json(report.bounds.t_cumulative);
  j["t"] = vector_to_json(report.bounds.t);
  j["t_flat"] = vector_to_json(report.bounds.t_flat);
  json tight;
  tight["gaps"] = vector_to_json(report.tightness.gaps);
  tight["max_abs_gap"] = report.tightness.max_abs_gap;
  j["tightness"] = std::move(tight);
  json conj;
  conj["sorted_overlaps"] = vector_to_json(report.conjecture.sorted_overlaps);
  conj["rhs"] = report.conjecture.rhs_infinite
                    ? json("inf")
                    : scaled_entropy(report.conjecture.rhs, log_base);
  conj["rhs_by_range"] = [&] {
    json arr = json::array();
    for (double v : report.conjecture.rhs_by_range) {
      arr.push_back(std::isfinite(v) ? scaled_entropy(v, log_base) : json("inf"));
    }
    return arr;
  }();
  conj["terms"] = report.conjecture.terms;
  conj["min_lhs"] = scaled_entropy(report.conjecture.min_lhs, log_base);
  conj["argmin_sample"] = report.conjecture.argmin_sample;
  conj["argmin_seed"] = report.conjecture.argmin_seed;
  conj["slack"] = number_or_string(report.conjecture.slack);
  conj["counterexample_candidate"] = report.conjecture.counterexample_candidate;
  j["conjecture"] = std::move(conj);
  json viols = json::array();
  for (const Violation& v : report.violations) {
    viols.push_back({{"kind", v.kind},
                     {"sample", v.sample},
                     {"seed", v.seed},
                     {"slack", number_or_string(v.slack)},
                     {"detail", v.detail}});
  }
  j["violations"] = std::move(viols);
  j["passed"] = report.passed();
  return j;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace io
}  // namespace procunc
