#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "procunc/io.hpp"

namespace {

using procunc::io::json;

constexpr int kExitOk = 0;
constexpr int kExitDomainFailure = 1;
constexpr int kExitInputError = 2;

struct GlobalFlags {
  double log_base = 2.0;
  double tol = -1.0;  // < 0: keep per-config defaults
  int enumeration_cap = 16;
  bool overlap_exclude_complement = false;
  int threads = 0;  // 0 = auto
  std::uint64_t seed = 0;
  bool seed_given = false;
};

std::vector<double> parse_vector(const std::string& arg) {
  std::vector<double> v;
  std::stringstream ss(arg);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      v.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw procunc::io::ParseError("cannot parse '" + item + "' as a number");
    }
  }
  if (v.empty()) throw procunc::io::ParseError("empty vector argument");
  return v;
}

int print_diagnostics(const procunc::io::InputDocument& doc) {
  for (const auto& d : doc.diagnostics) {
    std::cout << (d.pass ? "ok   " : "FAIL ") << d.kind << " '" << d.name << "'";
    for (const auto& [key, value] : d.residuals) {
      std::cout << " " << key << "=" << value;
    }
    if (!d.pass) std::cout << " (" << d.message << ")";
    std::cout << "\n";
  }
  return doc.all_valid() ? kExitOk : kExitDomainFailure;
}

int cmd_validate(const std::string& file) {
  procunc::io::InputDocument doc = procunc::io::load_document_file(file);
  return print_diagnostics(doc);
}

int cmd_bounds(const std::string& file, const std::string& t1_name,
               const std::string& t2_name, const GlobalFlags& flags) {
  procunc::io::InputDocument doc = procunc::io::load_document_file(file);
  if (!doc.all_valid()) {
    print_diagnostics(doc);
    return kExitDomainFailure;
  }
  procunc::Tester t1 = doc.build_named_tester(t1_name);
  procunc::Tester t2 = doc.build_named_tester(t2_name);

  procunc::SVectorOptions opts;
  opts.enumeration_cap = flags.enumeration_cap;
  opts.threads = flags.threads;
  procunc::BoundVectors bounds = procunc::compute_bounds(t1, t2, opts);
  procunc::OverlapTable table =
      procunc::overlap_table(procunc::extend(t1), procunc::extend(t2));
  double used = flags.overlap_exclude_complement ? table.max_excluding_complement()
                                                 : table.max_overlap;
  std::cout << procunc::io::dump(
      procunc::io::bound_report_to_json(bounds, table, used, flags.log_base));
  return kExitOk;
}

int cmd_verify(const std::string& file, const GlobalFlags& flags, int samples_override) {
  procunc::io::InputDocument doc = procunc::io::load_document_file(file);
  if (!doc.all_valid()) {
    print_diagnostics(doc);
    return kExitDomainFailure;
  }
  if (!doc.campaign) {
    throw procunc::io::ParseError("document carries no campaign section");
  }
  procunc::io::CampaignSpec spec = *doc.campaign;
  procunc::CampaignConfig& config = spec.config;
  if (flags.seed_given) config.seed = flags.seed;
  if (samples_override > 0) config.samples = samples_override;
  if (flags.tol >= 0.0) {
    config.tolerances.mu_slack = flags.tol;
    config.tolerances.uur_slack = flags.tol;
  }
  config.enumeration_cap = flags.enumeration_cap;
  config.threads = flags.threads;
  config.overlap_exclude_complement = flags.overlap_exclude_complement;

  procunc::Tester t1 = [&] {
    if (spec.tester_names) return doc.build_named_tester(spec.tester_names->first);
    procunc::Rng rng(procunc::split_seed(config.seed, 0x8000000000000000ull));
    return procunc::random_tester(config.d_R, config.d_A, config.d_B,
                                  spec.random_outcomes_1, rng);
  }();
  procunc::Tester t2 = [&] {
    if (spec.tester_names) return doc.build_named_tester(spec.tester_names->second);
    procunc::Rng rng(procunc::split_seed(config.seed, 0x8000000000000001ull));
    return procunc::random_tester(config.d_R, config.d_A, config.d_B,
                                  spec.random_outcomes_2, rng);
  }();

  procunc::CampaignReport report = procunc::run_verification(config, t1, t2);
  std::cout << procunc::io::dump(
      procunc::io::campaign_report_to_json(report, spec, flags.log_base));
  return report.passed() ? kExitOk : kExitDomainFailure;
}

int cmd_lattice(const std::vector<std::string>& vector_args, const std::string& file) {
  std::vector<std::vector<double>> raw;
  if (!file.empty()) {
    json j;
    if (file == "-") {
      try {
        j = json::parse(std::cin);
      } catch (const std::exception& e) {
        throw procunc::io::ParseError(e.what());
      }
    } else {
      std::ifstream in(file);
      if (!in) throw procunc::io::ParseError("cannot open '" + file + "'");
      try {
        j = json::parse(in);
      } catch (const std::exception& e) {
        throw procunc::io::ParseError(e.what());
      }
    }
    if (!j.contains("vectors") || !j["vectors"].is_array()) {
      throw procunc::io::ParseError("lattice file: expected {\"vectors\": [[...], ...]}");
    }
    for (const json& v : j["vectors"]) raw.push_back(v.get<std::vector<double>>());
  }
  for (const std::string& arg : vector_args) raw.push_back(parse_vector(arg));
  if (raw.empty()) throw procunc::io::ParseError("lattice: no vectors given");

  size_t len = 0;
  for (const auto& v : raw) len = std::max(len, v.size());
  double total = -1.0;
  for (auto& v : raw) {
    v.resize(len, 0.0);
    double t = 0.0;
    for (double x : v) t += x;
    if (total < 0.0) {
      total = t;
    } else if (std::abs(t - total) > procunc::tol::prefix) {
      std::cerr << "lattice: vector totals differ (" << t << " vs " << total << ")\n";
      return kExitDomainFailure;
    }
  }

  // Prefix minima/maxima tolerate unsorted inputs; the optimality statements
  // of the majorization lattice presume nonincreasing members.
  std::vector<double> min_prefix(len, 1e300), max_prefix(len, -1e300);
  for (const auto& v : raw) {
    double prefix = 0.0;
    for (size_t k = 0; k < len; ++k) {
      prefix += v[k];
      min_prefix[k] = std::min(min_prefix[k], prefix);
      max_prefix[k] = std::max(max_prefix[k], prefix);
    }
  }
  std::vector<double> a(len), b(len);
  for (size_t k = 0; k < len; ++k) {
    a[k] = min_prefix[k] - (k == 0 ? 0.0 : min_prefix[k - 1]);
    b[k] = max_prefix[k] - (k == 0 ? 0.0 : max_prefix[k - 1]);
  }
  auto trace = procunc::flatness_trace(b);

  json out;
  out["vectors"] = raw;
  out["a"] = a;
  out["b"] = b;
  out["glb"] = a;
  out["lub"] = trace.back();
  out["flatness_trace"] = trace;
  std::cout << procunc::io::dump(out);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Uncertainty relations for quantum processes: tester overlaps, "
               "Rényi bounds, and majorization bound synthesis"};
  app.require_subcommand(1);

  GlobalFlags flags;
  app.add_option("--log-base", flags.log_base, "Logarithm base for entropic output")
      ->default_val(2.0)
      ->check(CLI::PositiveNumber);
  app.add_option("--tol", flags.tol,
                 "Override the violation slack tolerances (Theorems 1-3)");
  app.add_option("--enumeration-cap", flags.enumeration_cap,
                 "Max pool size for exact subset enumeration")
      ->default_val(16);
  app.add_flag("--overlap-exclude-complement", flags.overlap_exclude_complement,
               "Exploration toggle: drop complement effects from the overlap maximum");
  app.add_option("--threads", flags.threads, "Worker threads (0 = auto)")->default_val(0);
  auto* seed_opt =
      app.add_option("--seed", flags.seed, "Campaign seed")->envname("PROCUNC_SEED");

  auto* validate = app.add_subcommand("validate", "Load a document and report residuals");
  std::string validate_file;
  validate->add_option("file", validate_file, "Input JSON ('-' for stdin)")->required();

  auto* bounds = app.add_subcommand("bounds", "Overlap table and s/t bound vectors");
  std::string bounds_file, t1_name, t2_name;
  bounds->add_option("file", bounds_file, "Input JSON ('-' for stdin)")->required();
  bounds->add_option("--t1", t1_name, "First tester name")->required();
  bounds->add_option("--t2", t2_name, "Second tester name")->required();

  auto* verify = app.add_subcommand("verify", "Run the Monte-Carlo verification campaign");
  std::string verify_file;
  int samples_override = -1;
  verify->add_option("file", verify_file, "Input JSON ('-' for stdin)")->required();
  verify->add_option("--samples", samples_override, "Override the campaign sample count");

  auto* lattice = app.add_subcommand(
      "lattice", "Majorization-lattice GLB/LUB and the flatness trace");
  std::vector<std::string> lattice_vectors;
  std::string lattice_file;
  lattice->add_option("vectors", lattice_vectors,
                      "Comma-separated vectors, e.g. 0.6,0.15,0.15,0.1");
  lattice->add_option("--file", lattice_file, "JSON file with {\"vectors\": [...]}");

  CLI11_PARSE(app, argc, argv);
  flags.seed_given =
      seed_opt->count() > 0 || std::getenv("PROCUNC_SEED") != nullptr;

  try {
    if (*validate) return cmd_validate(validate_file);
    if (*bounds) return cmd_bounds(bounds_file, t1_name, t2_name, flags);
    if (*verify) return cmd_verify(verify_file, flags, samples_override);
    if (*lattice) return cmd_lattice(lattice_vectors, lattice_file);
  } catch (const procunc::io::ParseError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const procunc::EnumerationCapError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDomainFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDomainFailure;
  }
  return kExitOk;
}
