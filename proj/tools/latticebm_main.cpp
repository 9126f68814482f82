// Command line front end. All logic lives in the library; this file parses
// flags, loads JSON inputs, dispatches, and prints certificates or reports.
//
// Exit codes: 0 the inequality holds (strictly or with equality), 1 violated,
// 2 bad input or a failed theorem precondition, 3 a theorem-covered scan
// found a violation.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstddef>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "latticebm/errors.hpp"
#include "latticebm/functions.hpp"
#include "latticebm/json_io.hpp"
#include "latticebm/radical_sum.hpp"
#include "latticebm/search.hpp"
#include "latticebm/sets.hpp"
#include "latticebm/verifiers.hpp"

namespace {

using namespace latticebm;

// "none", "closed_unit", "half_open_unit", "open:R", "closed:R", or
// "box:FILE" where FILE holds a single-box set.
CubeSpec parse_corrector(const std::string& spec) {
  if (spec == "none") return CubeSpec::none();
  if (spec == "closed_unit") return CubeSpec::closed_unit();
  if (spec == "half_open_unit") return CubeSpec::half_open_unit();
  if (spec.rfind("open:", 0) == 0) return CubeSpec::open_sym(parse_rational(spec.substr(5)));
  if (spec.rfind("closed:", 0) == 0) return CubeSpec::closed_sym(parse_rational(spec.substr(7)));
  if (spec.rfind("box:", 0) == 0) {
    SetExpr s = load_set(spec.substr(4));
    if (s.boxes.size() != 1 || !s.points.empty())
      throw input_error("a corrector file must hold exactly one box");
    return CubeSpec::custom_box(s.boxes[0]);
  }
  throw input_error("unknown corrector '" + spec +
                    "' (want none, closed_unit, half_open_unit, open:R, closed:R, or box:FILE)");
}

DilationTriple parse_dilation(const std::string& s) {
  std::istringstream in(s);
  DilationTriple t;
  char c1 = 0, c2 = 0;
  if (!(in >> t.m >> c1 >> t.p >> c2 >> t.q) || c1 != ',' || c2 != ',' || !(in >> std::ws).eof())
    throw input_error("dilation wants three naturals m,p,q, got '" + s + "'");
  return t;
}

std::vector<Rational> parse_lambda_list(const std::string& s) {
  std::vector<Rational> grid;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, ',')) grid.push_back(parse_rational(item));
  if (grid.empty()) throw input_error("empty weight list");
  return grid;
}

const std::string& need(const std::string& path, const char* flag, const std::string& id) {
  if (path.empty()) throw input_error(id + " needs " + flag);
  return path;
}

std::string one_line(const std::string& pretty) {
  return nlohmann::ordered_json::parse(pretty).dump();
}

void print_certificate_text(std::ostream& out, const Certificate& cert, int indent) {
  const std::string pad(indent, ' ');
  out << pad << "theorem: " << cert.theorem_id << '\n';
  out << pad << "verdict: " << verdict_name(cert.verdict) << '\n';
  out << pad << "lhs: " << cert.lhs.to_string() << '\n';
  out << pad << "  approx: " << cert.lhs.to_decimal(20) << '\n';
  out << pad << "rhs: " << cert.rhs.to_string() << '\n';
  out << pad << "  approx: " << cert.rhs.to_decimal(20) << '\n';
  if (cert.witness) {
    out << pad << "witness: " << cert.witness->note << '\n';
    if (cert.witness->x) out << pad << "  x: " << to_string(*cert.witness->x) << '\n';
    if (cert.witness->y) out << pad << "  y: " << to_string(*cert.witness->y) << '\n';
  }
}

void print_instance_text(std::ostream& out, const ScanInstance& inst) {
  out << "  lambda: " << to_string(inst.lambda) << '\n';
  out << "  K: " << one_line(to_json(inst.K)) << '\n';
  out << "  L: " << one_line(to_json(inst.L)) << '\n';
  print_certificate_text(out, inst.certificate, 2);
}

void print_report_text(std::ostream& out, const ScanReport& rep) {
  out << "theorem: " << rep.theorem_id << '\n';
  out << "instances run: " << rep.instances_run << '\n';
  out << "skipped preconditions: " << rep.skipped_preconditions << '\n';
  out << "equalities: " << rep.equalities.size() << '\n';
  out << "violations: " << rep.violations.size() << '\n';
  if (rep.min_slack) {
    out << "min slack:\n";
    print_instance_text(out, *rep.min_slack);
  }
  for (const ScanInstance& inst : rep.equalities) {
    out << "equality:\n";
    print_instance_text(out, inst);
  }
  for (const ScanInstance& inst : rep.violations) {
    out << "violation:\n";
    print_instance_text(out, inst);
  }
}

struct VerifyArgs {
  std::string theorem;
  std::string K_path, L_path, M_path;
  std::string f_path, g_path, h_path, k_path, window_path, basis_path;
  std::string lambda = "1/2";
  std::string p = "inf";
  std::string dilation, corrector;
  bool unguarded = false;
  bool text = false;
};

int run_verify(const VerifyArgs& a) {
  const std::string& id = a.theorem;
  const Rational lambda = parse_rational(a.lambda);
  Certificate cert;
  if (id == "lemma_ell") {
    cert = verify_lemma_ell(load_set(need(a.K_path, "--K", id)), load_set(need(a.L_path, "--L", id)),
                            load_set(need(a.M_path, "--M", id)), lambda);
  } else if (id == "bbl") {
    std::optional<LatticeBasis> basis;
    if (!a.basis_path.empty()) basis = load_basis(a.basis_path);
    cert = verify_bbl(load_function(need(a.f_path, "--f", id)),
                      load_function(need(a.g_path, "--g", id)),
                      load_function(need(a.h_path, "--h", id)),
                      load_set(need(a.K_path, "--K", id)), load_set(need(a.L_path, "--L", id)),
                      lambda, parse_exponent(a.p), basis);
  } else if (id == "hks") {
    cert = verify_hks(load_function(need(a.f_path, "--f", id)),
                      load_function(need(a.g_path, "--g", id)),
                      load_function(need(a.h_path, "--h", id)),
                      load_function(need(a.k_path, "--k", id)), lambda,
                      load_set(need(a.window_path, "--window", id)));
  } else if (id == "hks_characteristic" || id == "hks_sqrt" || id == "card_sum" ||
             id == "trivial_card") {
    SetExpr K = load_set(need(a.K_path, "--K", id));
    SetExpr L = load_set(need(a.L_path, "--L", id));
    if (id == "hks_characteristic") cert = verify_hks_characteristic(K, L);
    else if (id == "hks_sqrt") cert = verify_hks_sqrt(K, L);
    else if (id == "card_sum") cert = verify_card_sum(K, L);
    else cert = verify_trivial_card(K, L);
  } else {
    VerifyRequest req{(id == "bm_pmean") ? std::string("main_bm") : id,
                      load_set(need(a.K_path, "--K", id)),
                      load_set(need(a.L_path, "--L", id)),
                      lambda,
                      {},
                      {},
                      a.unguarded};
    if (!a.dilation.empty()) req.dilation = parse_dilation(a.dilation);
    if (!a.corrector.empty()) req.corrector = parse_corrector(a.corrector);
    cert = (id == "bm_pmean") ? verify_bm_pmean(req, parse_exponent(a.p)) : verify_bm(req);
  }
  if (a.text) print_certificate_text(std::cout, cert, 0);
  else std::cout << to_json(cert) << '\n';
  return cert.verdict == Verdict::Violated ? 1 : 0;
}

struct ScanArgs {
  std::string theorem;
  std::string family = "lattice_points";
  int n = 1;
  long window = 5;
  std::string density = "3/10";
  int max_boxes = 2;
  long denom_bound = 2;
  std::uint64_t seed = 1;
  long count = 100;
  std::string lambdas = "1/2";
  std::string p, dilation, corrector;
  bool unguarded = false;
  int jobs = 1;
  bool text = false;
};

int run_scan(const ScanArgs& a) {
  InstanceFamily fam;
  if (a.family == "lattice_points") fam.kind = InstanceFamily::Kind::LatticePoints;
  else if (a.family == "box_union") fam.kind = InstanceFamily::Kind::BoxUnion;
  else throw input_error("unknown family '" + a.family + "' (want lattice_points or box_union)");
  fam.dimension = a.n;
  fam.window = a.window;
  fam.density = parse_rational(a.density);
  fam.max_boxes = a.max_boxes;
  fam.denominator_bound = a.denom_bound;
  fam.seed = a.seed;

  ScanOptions opts;
  if (!a.p.empty()) opts.exponent = parse_exponent(a.p);
  if (!a.dilation.empty()) opts.dilation = parse_dilation(a.dilation);
  if (!a.corrector.empty()) opts.corrector = parse_corrector(a.corrector);
  opts.unguarded = a.unguarded;
  opts.jobs = a.jobs;

  ScanReport rep = scan(fam, parse_lambda_list(a.lambdas), a.theorem, a.count, opts);
  if (a.text) print_report_text(std::cout, rep);
  else std::cout << to_json(rep) << '\n';
  return (theorem_covered(a.theorem, opts) && !rep.violations.empty()) ? 3 : 0;
}

int run_repro(const std::string& check, bool list_only, bool text) {
  if (list_only) {
    for (const std::string& name : repro_check_names()) std::cout << name << '\n';
    return 0;
  }
  std::vector<ReproCheck> checks;
  if (check.empty()) checks = repro_paper();
  else checks.push_back(repro_check(check));
  bool all_pass = true;
  for (const ReproCheck& c : checks) all_pass = all_pass && c.pass;
  if (!text) {
    std::cout << to_json(checks) << '\n';
    return all_pass ? 0 : 1;
  }
  std::size_t width = 0;
  for (const ReproCheck& c : checks) width = std::max(width, c.name.size());
  std::size_t passed = 0;
  for (const ReproCheck& c : checks) {
    std::cout << c.name << std::string(width - c.name.size() + 2, ' ')
              << (c.pass ? "PASS" : "FAIL") << "  " << c.detail << '\n';
    if (c.pass) ++passed;
  }
  std::cout << passed << '/' << checks.size() << " checks passed\n";
  return all_pass ? 0 : 1;
}

int run_demo(const std::string& set_path, const std::string& window_path, unsigned k_max,
             bool text) {
  SetExpr s = load_set(need(set_path, "--set", "demo-limit"));
  SetExpr w = load_set(need(window_path, "--window", "demo-limit"));
  std::vector<RiemannStep> steps = riemann_limit_demo(s, w, k_max);
  if (!text) {
    std::cout << to_json(steps) << '\n';
    return 0;
  }
  for (const RiemannStep& step : steps) {
    std::cout << step.k << "  " << to_string(step.lower_sum) << "  approx "
              << RadicalSum(step.lower_sum).to_decimal(20) << '\n';
  }
  return 0;
}

void add_format_flag(CLI::App* cmd, std::string& format) {
  cmd->add_option("--format", format, "output format")
      ->check(CLI::IsMember({"json", "text"}))
      ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Exact verification of discrete Brunn-Minkowski type inequalities for the "
      "lattice point count G_n"};
  app.require_subcommand(1);

  VerifyArgs va;
  std::string verify_format = "json";
  CLI::App* verify_cmd = app.add_subcommand("verify", "check one instance and print a certificate");
  // frees the short -h so --h can name the middle function
  verify_cmd->set_help_flag("--help", "print help");
  verify_cmd->add_option("--theorem", va.theorem,
                         "main_bm, naive, custom, rational_dilation, half_sum, bm_pmean, "
                         "lemma_ell, bbl, hks, hks_characteristic, hks_sqrt, card_sum, "
                         "trivial_card")
      ->required();
  verify_cmd->add_option("--K,--A", va.K_path, "first set (JSON file)");
  verify_cmd->add_option("--L,--B", va.L_path, "second set (JSON file)");
  verify_cmd->add_option("--M", va.M_path, "covering interval union (lemma_ell)");
  verify_cmd->add_option("--f", va.f_path, "function f (JSON file)");
  verify_cmd->add_option("--g", va.g_path, "function g (JSON file)");
  verify_cmd->add_option("--h", va.h_path, "function h (JSON file)");
  verify_cmd->add_option("--k", va.k_path, "function k (hks)");
  verify_cmd->add_option("--window", va.window_path, "hypothesis window set (hks)");
  verify_cmd->add_option("--basis", va.basis_path, "lattice basis (bbl)");
  verify_cmd->add_option("--lambda", va.lambda, "weight in (0,1)")->capture_default_str();
  verify_cmd->add_option("--p", va.p, "mean exponent: rational, inf, or -inf")
      ->capture_default_str();
  verify_cmd->add_option("--dilation", va.dilation, "m,p,q for rational_dilation");
  verify_cmd->add_option("--corrector", va.corrector, "corrector cube override");
  verify_cmd->add_flag("--unguarded", va.unguarded, "drop the lattice-point hypothesis");
  add_format_flag(verify_cmd, verify_format);

  ScanArgs sa;
  std::string scan_format = "json";
  CLI::App* scan_cmd = app.add_subcommand("scan", "run a verifier over a random family");
  scan_cmd->add_option("--theorem", sa.theorem, "theorem id to scan")->required();
  scan_cmd->add_option("--family", sa.family, "lattice_points or box_union")
      ->capture_default_str();
  scan_cmd->add_option("--n", sa.n, "ambient dimension")->capture_default_str();
  scan_cmd->add_option("--window", sa.window, "coordinate window half-width")
      ->capture_default_str();
  scan_cmd->add_option("--density", sa.density, "lattice point inclusion probability")
      ->capture_default_str();
  scan_cmd->add_option("--max-boxes", sa.max_boxes, "boxes per set (box_union)")
      ->capture_default_str();
  scan_cmd->add_option("--denom-bound", sa.denom_bound, "endpoint denominator bound (box_union)")
      ->capture_default_str();
  scan_cmd->add_option("--seed", sa.seed, "generator seed")->capture_default_str();
  scan_cmd->add_option("--count", sa.count, "instances to generate")->capture_default_str();
  scan_cmd->add_option("--lambdas", sa.lambdas, "comma-separated weights")->capture_default_str();
  scan_cmd->add_option("--p", sa.p, "mean exponent (bm_pmean)");
  scan_cmd->add_option("--dilation", sa.dilation, "m,p,q (rational_dilation)");
  scan_cmd->add_option("--corrector", sa.corrector, "corrector cube override");
  scan_cmd->add_flag("--unguarded", sa.unguarded, "drop the lattice-point hypothesis");
  scan_cmd->add_option("--jobs", sa.jobs, "worker threads")->capture_default_str();
  add_format_flag(scan_cmd, scan_format);

  std::string repro_check_name;
  bool repro_list = false;
  std::string repro_format = "json";
  CLI::App* repro_cmd = app.add_subcommand("repro", "run the fixed table of worked examples");
  repro_cmd->add_option("--check", repro_check_name, "run a single named check");
  repro_cmd->add_flag("--list", repro_list, "list check names and exit");
  add_format_flag(repro_cmd, repro_format);

  std::string demo_set, demo_window;
  unsigned demo_kmax = 10;
  std::string demo_format = "json";
  CLI::App* demo_cmd =
      app.add_subcommand("demo-limit", "lower Riemann sums of a box-union indicator");
  demo_cmd->add_option("--set", demo_set, "box union set (JSON file)");
  demo_cmd->add_option("--window", demo_window, "single closed box containing the set");
  demo_cmd->add_option("--k-max", demo_kmax, "finest grid exponent")->capture_default_str();
  add_format_flag(demo_cmd, demo_format);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*verify_cmd) {
      va.text = verify_format == "text";
      return run_verify(va);
    }
    if (*scan_cmd) {
      sa.text = scan_format == "text";
      return run_scan(sa);
    }
    if (*repro_cmd) return run_repro(repro_check_name, repro_list, repro_format == "text");
    if (*demo_cmd) return run_demo(demo_set, demo_window, demo_kmax, demo_format == "text");
  } catch (const input_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const unrepresentable_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
