// metsymp: catalog listing, verification suite, (κ,μ) fits, symplectization
// and 𝒟-homothety checks. Exit codes: 0 all pass, 1 a check failed, 2 bad input.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "metsymp/catalog.hpp"
#include "metsymp/errors.hpp"
#include "metsymp/structure_file.hpp"
#include "metsymp/submersion.hpp"
#include "metsymp/suite.hpp"

using namespace metsymp;

namespace {

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kInputError = 2;

struct Loaded {
  std::string name;
  ContactMetricStructure structure;
};

// A catalog name, or else the path of a structure file.
Loaded load_entry(const std::string& entry) {
  for (const auto& n : catalog_names())
    if (n == entry) return {entry, catalog_load(entry).structure};
  if (std::filesystem::exists(entry)) {
    auto f = load_structure_file(entry);
    return {f.name.empty() ? entry : f.name, std::move(f.structure)};
  }
  throw ConfigError("unknown entry '" + entry + "' (not a catalog name or a file)");
}

Interval parse_range(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw ConfigError("t-range must be 'a,b'");
  std::size_t used = 0;
  try {
    const std::string a = text.substr(0, comma), b = text.substr(comma + 1);
    const double lo = std::stod(a, &used);
    if (used != a.size()) throw ConfigError("bad t-range '" + text + "'");
    const double hi = std::stod(b, &used);
    if (used != b.size()) throw ConfigError("bad t-range '" + text + "'");
    if (!(lo < hi)) throw ConfigError("t-range must satisfy a < b");
    return {lo, hi};
  } catch (const std::logic_error&) {
    throw ConfigError("bad t-range '" + text + "'");
  }
}

std::string show(const std::optional<double>& v) {
  if (!v) return "undefined";
  std::ostringstream os;
  os << std::setprecision(10) << *v;
  return os.str();
}

void print_report(const std::string& title, const Report& r) {
  for (const auto& m : r.measures) {
    std::cout << (m.informational ? "info" : m.pass() ? "PASS" : "FAIL") << "  " << title << "/" << m.name << "  "
              << std::setprecision(6) << std::scientific << m.value;
    if (!m.informational) std::cout << (m.above ? " > " : " < ") << m.threshold;
    std::cout << std::defaultfloat << "\n";
  }
}

void print_kmu(const KmuReport& k) {
  std::cout << "kappa     " << std::setprecision(10) << k.kappa << "\n"
            << "mu        " << show(k.mu) << "\n"
            << "residual  " << std::setprecision(3) << std::scientific << k.residual << std::defaultfloat << "\n"
            << "sasakian  " << (k.sasakian ? "yes" : "no") << "\n";
  if (k.mu && 1.0 - k.kappa > 1e-8) std::cout << "index     " << std::setprecision(10) << boeckx_index(k.kappa, *k.mu) << "\n";
}

int cmd_list() {
  for (const auto& n : catalog_names()) {
    const auto e = catalog_load(n);
    std::cout << n << "\n  " << e.description << "\n  expected kappa " << show(e.kappa) << ", mu " << show(e.mu)
              << "\n";
  }
  return kPass;
}

int cmd_check(const std::string& entry, const SuiteConfig& cfg, const std::string& format, const std::string& out) {
  const Loaded l = load_entry(entry);
  const SuiteReport rep = run_suite(l.name, l.structure, cfg);
  const std::string text = report_emit(rep, format);
  if (out.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(out, std::ios::binary);
    if (!f) throw ConfigError("cannot write '" + out + "'");
    f << text;
  }
  return rep.all_passed() ? kPass : kFail;
}

int cmd_fit(const std::string& entry, int samples, std::uint64_t seed) {
  if (samples < 1) throw ConfigError("samples must be positive");
  const Loaded l = load_entry(entry);
  const Samples pts = l.structure.chart().sample(samples, seed);
  const Report compat = verify_compatibility(l.structure, pts);
  if (!compat.passed()) {
    print_report("compatibility", compat);
    return kFail;
  }
  const KmuReport k = fit_kappa_mu(l.structure, pts);
  std::cout << l.name << "\n";
  print_kmu(k);
  return k.residual < 1e-6 ? kPass : kFail;
}

int cmd_symplectize(const std::string& entry, Interval t_range, bool verify, int samples, std::uint64_t seed) {
  if (samples < 1) throw ConfigError("samples must be positive");
  const Loaded l = load_entry(entry);
  const MetricSymplectization b = build_metric_symplectization(l.structure, t_range);
  const Chart& c = b.chart();
  Point mid;
  for (const auto& iv : c.domain()) mid.push_back(0.5 * (iv.lo + iv.hi));
  std::cout << l.name << ": metric symplectization on (";
  for (int i = 0; i < c.dim(); ++i) std::cout << (i ? ", " : "") << c.names()[static_cast<std::size_t>(i)];
  std::cout << "), t in [" << t_range.lo << ", " << t_range.hi << "]\n";
  auto matrix = [&](const char* label, const TensorField& f) {
    std::cout << label << " at the chart center\n" << as_matrix(f.value(mid)) << "\n";
  };
  matrix("omega", b.omega);
  matrix("metric", b.g);
  matrix("J", b.J);
  if (!verify) return kPass;
  const Samples pts = c.sample(samples, seed);
  Report r = verify_symplectic(b.omega, pts);
  for (const auto& m : verify_compatible_triple(b, pts).measures) r.measures.push_back(m);
  for (const auto& m : verify_metric_symplectization(b, pts).measures) r.measures.push_back(m);
  print_report("symplectization", r);
  const Report liouville = verify_liouville(b.omega, 0.5 * b.dt, pts);
  print_report("liouville_half_dt", liouville);
  const Report lemma = verify_lemma_T(b, pts);
  print_report("lemma_T", lemma);
  return r.passed() && liouville.passed() && lemma.passed() ? kPass : kFail;
}

int cmd_dhomothety(const std::string& entry, double a, bool verify, int samples, std::uint64_t seed) {
  if (samples < 1) throw ConfigError("samples must be positive");
  if (!(a > 0.0)) throw ConfigError("--a must be positive");
  const Loaded l = load_entry(entry);
  const ContactMetricStructure t = d_homothety(l.structure, a);
  const Samples pts = l.structure.chart().sample(samples, seed);
  std::cout << l.name << " under the D-homothety a = " << a << "\n";
  if (!verify) {
    std::cout << "metric at the chart center\n";
    Point mid;
    for (const auto& iv : t.chart().domain()) mid.push_back(0.5 * (iv.lo + iv.hi));
    std::cout << as_matrix(t.g().value(mid)) << "\n";
    return kPass;
  }
  const Report compat = verify_compatibility(t, pts);
  print_report("compatibility", compat);
  const KmuReport before = fit_kappa_mu(l.structure, pts), after = fit_kappa_mu(t, pts);
  std::cout << "before\n";
  print_kmu(before);
  std::cout << "after\n";
  print_kmu(after);
  Report law;
  law.add("fit_residual", after.residual, 1e-6);
  law.add("kappa_law", std::abs(after.kappa - homothety_kappa(before.kappa, a)), 1e-6);
  if (before.mu && after.mu) {
    law.add("mu_law", std::abs(*after.mu - homothety_mu(*before.mu, a)), 1e-6);
    if (1.0 - before.kappa > 1e-8)
      law.add("index_invariance",
              std::abs(boeckx_index(after.kappa, *after.mu) - boeckx_index(before.kappa, *before.mu)), 1e-6);
  }
  print_report("dhomothety", law);
  return compat.passed() && law.passed() ? kPass : kFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Metric symplectizations of contact metric manifolds: numerical verification"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  app.add_subcommand("list", "List catalog entries");

  std::string entry, format = "text", out, range = "-1,1";
  int samples = 50;
  std::uint64_t seed = 42;
  bool verify = false;
  double a = 1.0;

  auto* check = app.add_subcommand("check", "Run the verification suite on a catalog entry or structure file");
  check->add_option("entry", entry, "Catalog name or structure file")->required();
  check->add_option("--samples", samples, "Samples per check");
  check->add_option("--seed", seed, "Sampling seed");
  check->add_option("--t-range", range, "t-range of the symplectization as a,b");
  check->add_option("--format", format, "Report format")->check(CLI::IsMember({"json", "text"}));
  check->add_option("--out", out, "Write the report to FILE");

  auto* fit = app.add_subcommand("fit-kmu", "Fit (kappa, mu) of a catalog entry or structure file");
  fit->add_option("entry", entry, "Catalog name or structure file")->required();
  fit->add_option("--samples", samples, "Sample count");
  fit->add_option("--seed", seed, "Sampling seed");

  auto* symp = app.add_subcommand("symplectize", "Build the metric symplectization");
  symp->add_option("entry", entry, "Catalog name or structure file")->required();
  symp->add_flag("--verify", verify, "Check symplectic, compatibility, Liouville and T-tensor identities");
  symp->add_option("--t-range", range, "t-range as a,b");
  symp->add_option("--samples", samples, "Sample count");
  symp->add_option("--seed", seed, "Sampling seed");

  auto* dh = app.add_subcommand("dhomothety", "Apply a D-homothety");
  dh->add_option("entry", entry, "Catalog name or structure file")->required();
  dh->add_option("--a", a, "Homothety constant")->required();
  dh->add_flag("--verify", verify, "Check compatibility and the (kappa, mu) transformation law");
  dh->add_option("--samples", samples, "Sample count");
  dh->add_option("--seed", seed, "Sampling seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }

  try {
    if (app.got_subcommand("list")) return cmd_list();
    if (*check) {
      SuiteConfig cfg;
      cfg.samples = samples;
      cfg.seed = seed;
      cfg.t_range = parse_range(range);
      return cmd_check(entry, cfg, format, out);
    }
    if (*fit) return cmd_fit(entry, samples, seed);
    if (*symp) return cmd_symplectize(entry, parse_range(range), verify, samples, seed);
    if (*dh) return cmd_dhomothety(entry, a, verify, samples, seed);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kInputError;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFail;
  }
  return kInputError;
}
