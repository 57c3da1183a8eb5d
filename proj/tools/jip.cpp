#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>

#include "jip/curve_file.hpp"
#include "jip/golden.hpp"
#include "jip/hyperelliptic.hpp"
#include "jip/sigma_calculus.hpp"

using namespace jip;

namespace {

constexpr int kPass = 0, kNumericFailure = 1, kInvalidInput = 2;

struct Options {
  int n = 0, s = 0, m = -1, g = 0;
  int order = 0;
  std::uint64_t seed = 1;
  double tolerance = 1e-6;
  std::string format = "text";
  std::string output;
  std::string curve_file;
  bool check_golden = false;
  bool extended = false;
  int count = 20;
};

bool invalid_input(ErrorKind k) {
  switch (k) {
    case ErrorKind::NotCoprime:
    case ErrorKind::InvalidLambdaIndex:
    case ErrorKind::InvalidInput:
    case ErrorKind::ParseError:
    case ErrorKind::OrderExceedsSupport:
    case ErrorKind::SymbolicLambda:
    case ErrorKind::TruncationTooShallow:
    case ErrorKind::UnsupportedBranchPoints:
      return true;
    default:
      return false;
  }
}

void write_out(const Options& o, const std::string& text) {
  if (o.output.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream f(o.output);
  if (!f) throw Error(ErrorKind::InvalidInput, "cannot write " + o.output);
  f << text;
}

CurveFamily family_of(const Options& o) {
  return make_family(o.n, o.s, {}, o.extended ? TermSet::extended : TermSet::standard);
}

int chart_order(const Options& o, const CurveFamily& fam) {
  if (o.order == 0) return default_order(fam);
  if (o.order < 2 * fam.genus() + 2) throw Error(ErrorKind::TruncationTooShallow, "order must be at least 2g+2");
  return o.order;
}

int cmd_info(const Options& o) {
  auto fam = family_of(o);
  int g = fam.genus();
  int sigma_weight = -(o.n * o.n - 1) * (o.s * o.s - 1) / 24;
  auto mons = monomial_basis(fam, std::max(2 * g, 1));
  if (o.format == "json") {
    nlohmann::ordered_json j{{"n", o.n}, {"s", o.s}, {"genus", g}, {"gaps", fam.gaps()}, {"sigma_weight", sigma_weight}};
    auto arr = nlohmann::ordered_json::array();
    for (const auto& m : mons) arr.push_back({{"j", m.j}, {"i", m.i}, {"weight", m.weight}, {"label", m.label}});
    j["monomials"] = arr;
    write_out(o, j.dump(2));
    return kPass;
  }
  std::ostringstream out;
  out << "curve     " << fam.name() << "\n";
  out << "genus     " << g << "\n";
  out << "gaps     ";
  for (int w : fam.gaps()) out << ' ' << w;
  out << "\nsigma weight " << sigma_weight << "\n";
  out << "monomials (label  weight  y^j x^i)\n";
  for (const auto& m : mons) out << "  " << m.label << "\t" << m.weight << "\ty^" << m.j << " x^" << m.i << "\n";
  write_out(o, out.str());
  return kPass;
}

int cmd_expand(const Options& o) {
  auto fam = family_of(o);
  auto ch = expand_at_infinity(fam, chart_order(o, fam));
  if (o.format == "json") {
    nlohmann::ordered_json j{{"n", o.n}, {"s", o.s}, {"order", ch.order}, {"precision", ch.precision}};
    auto h = nlohmann::ordered_json::array();
    for (int k = 0; k < ch.precision; ++k) h.push_back(ch.h.coefficient(k).to_string());
    j["h"] = h;
    j["x"] = ch.x_series.to_string();
    j["y"] = ch.y_series.to_string();
    write_out(o, j.dump(2));
    return kPass;
  }
  std::ostringstream out;
  out << "x(xi) = " << ch.x_series.to_string() << "\n";
  out << "y(xi) = xi^-" << o.s << " * h(xi)\n";
  for (int k = 0; k < ch.precision; ++k) out << "  h[" << k << "] = " << ch.h.coefficient(k).to_string() << "\n";
  write_out(o, out.str());
  return kPass;
}

int cmd_differentials(const Options& o) {
  auto fam = family_of(o);
  auto ch = expand_at_infinity(fam, chart_order(o, fam));
  auto fb = first_kind_basis(ch);
  auto sb = associated_second_kind(ch, fb);
  bool ok = rcond_is_identity(check_rcond(fb, sb), fam.gaps());
  if (o.format == "json") {
    nlohmann::ordered_json j{{"n", o.n}, {"s", o.s}};
    auto du = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < fb.gaps.size(); ++i)
      du.push_back({{"gap", fb.gaps[i]}, {"j", fb.numerators[i].j}, {"i", fb.numerators[i].i}});
    j["first_kind"] = du;
    auto dr = nlohmann::ordered_json::array();
    for (std::size_t l = 0; l < sb.numerators.size(); ++l) dr.push_back({{"l", l + 1}, {"numerator", sb.numerators[l].to_string()}});
    j["second_kind"] = dr;
    j["rcond_identity"] = ok;
    write_out(o, j.dump(2));
  } else {
    std::ostringstream out;
    out << "first kind (du_w = y^j x^i dx / f_y)\n";
    for (std::size_t i = 0; i < fb.gaps.size(); ++i)
      out << "  du_" << fb.gaps[i] << " : y^" << fb.numerators[i].j << " x^" << fb.numerators[i].i << "\n";
    out << "second kind (dr_l = N_l dx / f_y)\n";
    for (std::size_t l = 0; l < sb.numerators.size(); ++l) out << "  dr_" << l + 1 << " : " << sb.numerators[l].to_string() << "\n";
    out << "residue pairing identity: " << (ok ? "yes" : "NO") << "\n";
    write_out(o, out.str());
  }
  return ok ? kPass : kNumericFailure;
}

int cmd_formulas(const Options& o) {
  if (o.m >= 0 && o.m != o.s / o.n) throw Error(ErrorKind::InvalidInput, "m must equal floor(s/n) = " + std::to_string(o.s / o.n));
  if (o.format != "latex" && o.format != "json" && o.format != "text")
    throw Error(ErrorKind::InvalidInput, "format must be latex or json");
  auto fam = family_of(o);
  auto sys = o.order ? build_inversion_system(fam, chart_order(o, fam)) : build_inversion_system(fam);
  write_out(o, emit_system(sys, o.format == "json" ? EmitFormat::json : EmitFormat::latex));
  if (!o.check_golden) return kPass;
  auto cs = golden::cases_for(o.n, o.s, fam.term_set());
  if (cs.empty()) throw Error(ErrorKind::InvalidInput, "no embedded reference for " + fam.name());
  int failed = 0, total = 0;
  for (const auto& c : cs)
    for (const auto& chk : golden::run_case(c)) {
      ++total;
      if (chk.pass) continue;
      ++failed;
      std::cerr << "DIFF " << chk.case_id << " " << chk.item << "\n  expected: " << chk.expected << "\n  actual:   " << chk.actual << "\n";
    }
  std::cerr << (failed ? "FAIL" : "PASS") << " golden " << fam.name() << " (" << total - failed << "/" << total << " checks)\n";
  return failed ? kNumericFailure : kPass;
}

int cmd_roundtrip(const Options& o) {
  auto spec = load_curve_file(o.curve_file);
  std::mt19937_64 rng(o.seed);
  auto fam = numeric_family(spec, rng);
  if (!check_nondegenerate(fam).ok) throw Error(ErrorKind::BranchCollision, "curve is degenerate");
  nlohmann::ordered_json rep{{"curve", fam.name()}, {"seed", o.seed}, {"count", o.count}, {"tolerance", o.tolerance}};
  auto runs = nlohmann::ordered_json::array();
  double worst = 0;
  bool ok = true;
  for (int k = 0; k < o.count; ++k) {
    auto D = random_divisor(fam, rng);
    auto r = round_trip(fam, D, rng, o.tolerance);
    worst = std::max(worst, r.max_error);
    ok &= r.ok;
    runs.push_back({{"divisor", divisor_to_json(D)}, {"chi_degree", r.chi_degree}, {"max_error", r.max_error}});
  }
  rep["runs"] = runs;
  rep["max_error"] = worst;
  rep["pass"] = ok;
  write_out(o, rep.dump(2));
  return ok ? kPass : kNumericFailure;
}

int cmd_hyper_demo(const Options& o) {
  if (o.g != 1 && o.g != 2) throw Error(ErrorKind::InvalidInput, "hyper-demo supports g = 1 or 2");
  std::mt19937_64 rng(o.seed);
  auto fam = random_real_branch_family(o.g, rng);
  auto J = make_jacobian(fam);
  nlohmann::ordered_json rep{{"curve", fam.name()}, {"seed", o.seed}, {"branch_points", J.pd.branch_points}};
  auto tau = nlohmann::ordered_json::array();
  for (int i = 0; i < o.g; ++i)
    for (int k = 0; k < o.g; ++k) tau.push_back({J.pd.tau(i, k).real(), J.pd.tau(i, k).imag()});
  rep["tau"] = tau;
  auto checks = nlohmann::ordered_json::array();
  bool ok = true;
  for (int k = 0; k < o.count; ++k) {
    auto D = random_divisor(fam, rng);
    for (const auto& c : verify_inversion(J, D)) {
      ok &= c.abs_err < o.tolerance;
      checks.push_back(to_json(c));
    }
  }
  rep["checks"] = checks;
  rep["pass"] = ok;
  write_out(o, rep.dump(2));
  return ok ? kPass : kNumericFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Jacobi inversion on (n,s)-curves"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--order", o.order, "truncation order of the expansion at infinity");
  app.add_option("--seed", o.seed, "random seed");
  app.add_option("--tolerance", o.tolerance, "numeric pass threshold");
  app.add_option("--format", o.format, "text|latex|json");
  app.add_option("--output", o.output, "write result to file");
  app.add_flag("--extended", o.extended, "include the extra lambda terms of the extended family");
  app.add_option("--count", o.count, "number of random trials");

  auto add_ns = [&](CLI::App* c) {
    c->add_option("n", o.n)->required();
    c->add_option("s", o.s)->required();
  };
  auto* info = app.add_subcommand("info", "genus, gaps, monomials, sigma weight");
  add_ns(info);
  auto* expand = app.add_subcommand("expand", "Puiseux expansion at infinity");
  add_ns(expand);
  auto* diffs = app.add_subcommand("differentials", "first and associated second kind differentials");
  add_ns(diffs);
  auto* formulas = app.add_subcommand("formulas", "inversion system R-functions");
  add_ns(formulas);
  formulas->add_option("m", o.m);
  formulas->add_flag("--check-golden", o.check_golden, "compare with the embedded reference theorems");
  auto* roundtrip = app.add_subcommand("roundtrip", "divisor -> R-functions -> divisor");
  roundtrip->add_option("curve-file", o.curve_file)->required();
  auto* hyper = app.add_subcommand("hyper-demo", "numeric inversion check on a genus 1 or 2 hyperelliptic curve");
  hyper->add_option("g", o.g)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInvalidInput;
  }
  if (formulas->parsed() && o.format == "text") o.format = "latex";
  if (hyper->parsed() && o.count == 20) o.count = o.g == 1 ? 10 : 20;

  try {
    if (info->parsed()) return cmd_info(o);
    if (expand->parsed()) return cmd_expand(o);
    if (diffs->parsed()) return cmd_differentials(o);
    if (formulas->parsed()) return cmd_formulas(o);
    if (roundtrip->parsed()) return cmd_roundtrip(o);
    if (hyper->parsed()) return cmd_hyper_demo(o);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return invalid_input(e.kind()) ? kInvalidInput : kNumericFailure;
  }
  return kInvalidInput;
}
