#include "o4d/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "o4d/bubbles.hpp"
#include "o4d/decompose.hpp"
#include "o4d/errors.hpp"
#include "o4d/json_io.hpp"
#include "o4d/verify.hpp"

namespace o4d::cli {

namespace {

using io::json;

void emit(const RunConfig& cfg, const std::string& text, std::ostream& out) {
  if (cfg.out.empty())
    out << text;
  else
    io::write_file(cfg.out, text);
}

std::string csv_number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", x);
  return buf;
}

bubbles::Mollifier mollifier_of(const std::string& name) {
  if (name == "standard") return bubbles::Mollifier::standard();
  if (name == "asymmetric") return bubbles::Mollifier::asymmetric();
  throw ValidationError("unknown mollifier '" + name + "' (standard|asymmetric)");
}

bubbles::Profile profile_of(const std::string& name) {
  if (name == "L") return bubbles::profile_L();
  if (name == "psi2") return bubbles::profile_psi2();
  return io::profile_from_json(io::read_file(name), name);
}

orlicz::RadialTest phi_of(const std::string& name) {
  if (name == "gaussian") return orlicz::RadialTest::gaussian();
  if (name == "one") return orlicz::RadialTest::one();
  if (name == "zero") return orlicz::RadialTest::zero();
  if (name == "plateau") return orlicz::RadialTest::plateau();
  throw ValidationError("unknown test function '" + name + "' (gaussian|one|zero|plateau)");
}

void require_alpha(double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw ValidationError("--alpha must be a positive number");
}

LogRadialFunction read_function(const RunConfig& cfg) {
  if (cfg.in.empty()) throw ValidationError("--in is required");
  return io::function_from_json(io::read_file(cfg.in));
}

int cmd_gen_falpha(const RunConfig& cfg, std::ostream& out) {
  require_alpha(cfg.alpha);
  bubbles::FalphaOptions opt;
  opt.width = cfg.width;
  emit(cfg, io::dump(io::to_json(bubbles::make_falpha(cfg.alpha, opt))), out);
  return 0;
}

int cmd_gen_bubble(const RunConfig& cfg, std::ostream& out) {
  require_alpha(cfg.alpha);
  bubbles::BubbleSpec spec{cfg.alpha, profile_of(cfg.profile), mollifier_of(cfg.mollifier), cfg.mollified};
  emit(cfg, io::dump(io::to_json(bubbles::make_bubble(spec))), out);
  return 0;
}

int cmd_gen_family(const RunConfig& cfg, std::ostream& out) {
  decompose::SequenceFamily fam;
  if (cfg.family == "two-bubble")
    fam = decompose::two_bubble_family(cfg.indices);
  else if (cfg.family == "L")
    fam = decompose::synthesize_family(cfg.indices, {decompose::BubbleTerm{}}, mollifier_of(cfg.mollifier));
  else if (cfg.family == "L-pure")
    fam = decompose::synthesize_family(cfg.indices, {decompose::BubbleTerm{bubbles::profile_L(), 1, 1, 1, false}});
  else
    throw ValidationError("unknown family '" + cfg.family + "' (two-bubble|L|L-pure)");
  emit(cfg, io::dump(io::to_json(fam)), out);
  return 0;
}

int cmd_norm(const RunConfig& cfg, std::ostream& out) {
  const auto f = read_function(cfg);
  const auto n = radial::norms(f);
  json j;
  if (cfg.which == "all") {
    j = io::to_json(n);
  } else {
    const auto kind = radial::norm_kind_from_string(cfg.which);
    j[radial::to_string(kind)] = n.get(kind);
  }
  emit(cfg, io::dump(j), out);
  return 0;
}

int cmd_orlicz(const RunConfig& cfg, std::ostream& out) {
  const auto f = read_function(cfg);
  const auto r = orlicz::orlicz_norm_detail(f, cfg.orlicz);
  json j;
  j["kappa"] = cfg.orlicz.kappa;
  j["lambda_tol"] = cfg.orlicz.lambda_tol;
  j["lambda"] = r.lambda;
  j["bracket"] = {r.lo, r.hi};
  j["iterations"] = r.iterations;
  j["expansions"] = r.expansions;
  emit(cfg, io::dump(j), out);
  return 0;
}

int cmd_tm(const RunConfig& cfg, std::ostream& out) {
  const auto f = read_function(cfg);
  const auto r = orlicz::tm_functional(f, cfg.beta, cfg.orlicz.quad_rel_tol);
  json j;
  j["beta"] = cfg.beta;
  j["value"] = r.value;
  j["l2_squared"] = r.l2_squared;
  j["ratio"] = r.ratio;
  emit(cfg, io::dump(j), out);
  return 0;
}

int cmd_concentration(const RunConfig& cfg, std::ostream& out) {
  require_alpha(cfg.alpha);
  emit(cfg, io::dump(io::to_json(orlicz::pair_concentration(cfg.alpha, phi_of(cfg.phi), cfg.width))), out);
  return 0;
}

int cmd_lemma_add1(const RunConfig& cfg, std::ostream& out) {
  std::vector<double> alphas = cfg.alphas;
  if (alphas.empty()) throw ValidationError("--alpha is required");
  std::string text = "alpha,r4_integral,r3_integral\n";
  for (double a : alphas) {
    require_alpha(a);
    const auto [i4, i3] = bubbles::lemma_add1_integrals(a);
    text += csv_number(a) + "," + csv_number(i4) + "," + csv_number(i3) + "\n";
  }
  emit(cfg, text, out);
  return 0;
}

int cmd_decompose(const RunConfig& cfg, std::ostream& out) {
  if (cfg.in.empty()) throw ValidationError("--in is required");
  const auto fam = io::family_from_json(io::read_file(cfg.in));
  decompose::DecomposeConfig dc;
  dc.orlicz = cfg.orlicz;
  dc.max_profiles = cfg.max_profiles;
  dc.stop_frac = cfg.stop_frac;
  dc.mollifier = mollifier_of(cfg.mollifier);
  emit(cfg, io::dump(io::to_json(decompose::decompose(fam, dc))), out);
  return 0;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto rep = verify::run_suite(cfg.suite, cfg.seed);
  emit(cfg, io::dump(verify::to_json(rep)), out);
  err << "suite " << rep.suite << ": " << rep.passed() << "/" << rep.checks.size() << " checks pass\n";
  for (const auto& c : rep.checks)
    if (!c.pass) err << "  FAIL " << c.name << ": value " << c.value << " target " << c.target << "\n";
  return rep.pass() ? 0 : 1;
}

}  // namespace

int execute(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    cfg.orlicz.validate();
    if (cfg.command == "gen-falpha") return cmd_gen_falpha(cfg, out);
    if (cfg.command == "gen-bubble") return cmd_gen_bubble(cfg, out);
    if (cfg.command == "gen-family") return cmd_gen_family(cfg, out);
    if (cfg.command == "norm") return cmd_norm(cfg, out);
    if (cfg.command == "orlicz") return cmd_orlicz(cfg, out);
    if (cfg.command == "tm") return cmd_tm(cfg, out);
    if (cfg.command == "concentration") return cmd_concentration(cfg, out);
    if (cfg.command == "lemma-add1") return cmd_lemma_add1(cfg, out);
    if (cfg.command == "decompose") return cmd_decompose(cfg, out);
    if (cfg.command == "verify") return cmd_verify(cfg, out, err);
    throw ValidationError("unknown command '" + cfg.command + "'");
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return ValidationError::exit_code;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << "\n";
    return NumericalError::exit_code;
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Radial H^2(R^4) / Orlicz toolkit", "orlicz4d"};
  app.require_subcommand(1);

  auto out_opt = [&](CLI::App* sub) { sub->add_option("--out", cfg.out, "Output file (default: stdout)"); };
  auto in_opt = [&](CLI::App* sub) { sub->add_option("--in", cfg.in, "Input JSON")->required(); };
  auto orlicz_opts = [&](CLI::App* sub) {
    sub->add_option("--kappa", cfg.orlicz.kappa, "Orlicz level kappa")->capture_default_str();
    sub->add_option("--lambda-tol", cfg.orlicz.lambda_tol, "Relative bisection width")->capture_default_str();
  };

  auto* falpha = app.add_subcommand("gen-falpha", "Sample f_alpha");
  falpha->add_option("--alpha", cfg.alpha)->required();
  falpha->add_option("--width", cfg.width, "Support width of eta")->capture_default_str();
  out_opt(falpha);

  auto* bubble = app.add_subcommand("gen-bubble", "Sample a bubble");
  bubble->add_option("--alpha", cfg.alpha)->required();
  bubble->add_option("--profile", cfg.profile, "L, psi2 or a profile JSON file")->capture_default_str();
  bubble->add_option("--mollified", cfg.mollified)->capture_default_str();
  bubble->add_option("--mollifier", cfg.mollifier, "standard|asymmetric")->capture_default_str();
  out_opt(bubble);

  auto* family = app.add_subcommand("gen-family", "Synthesize a sequence family");
  family->add_option("--kind", cfg.family, "two-bubble|L|L-pure")->capture_default_str();
  family->add_option("--indices", cfg.indices)->delimiter(',');
  family->add_option("--mollifier", cfg.mollifier)->capture_default_str();
  out_opt(family);

  auto* norm = app.add_subcommand("norm", "Radial norms");
  in_opt(norm);
  norm->add_option("--which", cfg.which, "L2|GRAD|INVR_GRAD|LAP|H2_SUM|SCHROEDINGER|all")->capture_default_str();
  out_opt(norm);

  auto* orl = app.add_subcommand("orlicz", "Orlicz norm");
  in_opt(orl);
  orlicz_opts(orl);
  out_opt(orl);

  auto* tm = app.add_subcommand("tm", "Trudinger-Moser functional");
  in_opt(tm);
  tm->add_option("--beta", cfg.beta)->capture_default_str();
  out_opt(tm);

  auto* conc = app.add_subcommand("concentration", "Pair f_alpha with a test function");
  conc->add_option("--alpha", cfg.alpha)->required();
  conc->add_option("--phi", cfg.phi, "gaussian|one|zero|plateau")->capture_default_str();
  out_opt(conc);

  auto* add1 = app.add_subcommand("lemma-add1", "Lemma add1 integrals (CSV)");
  add1->add_option("--alpha", cfg.alphas, "One or more alpha values")->required()->delimiter(',');
  out_opt(add1);

  auto* dec = app.add_subcommand("decompose", "Profile decomposition");
  in_opt(dec);
  dec->add_option("--max-profiles", cfg.max_profiles)->capture_default_str();
  dec->add_option("--stop-frac", cfg.stop_frac)->capture_default_str();
  dec->add_option("--mollifier", cfg.mollifier)->capture_default_str();
  orlicz_opts(dec);
  out_opt(dec);

  auto* ver = app.add_subcommand("verify", "Verification suites");
  ver->add_option("--suite", cfg.suite, "inequalities|falpha|concentration|bubbles|decomposition|all")
      ->capture_default_str();
  ver->add_option("--seed", cfg.seed)->capture_default_str();
  out_opt(ver);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return ValidationError::exit_code;
  }
  for (auto* sub : app.get_subcommands()) {
    cfg.command = sub->get_name();
    if (sub->count("--help")) {
      out << sub->help();
      return 0;
    }
  }
  return execute(cfg, out, err);
}

int run(int argc, char** argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, std::cout, std::cerr);
}

}  // namespace o4d::cli
