// padic: command-line front end.
//
// Exit codes: 0 pass, 1 verification failure, 2 parameter error,
// 3 convergence failure.

#include <padic/acceptance.hpp>
#include <padic/padic.hpp>
#include <padic/report.hpp>

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <random>
#include <string>

namespace {

using namespace padic;
using report::json;
using report::RunReport;

enum Exit { kPass = 0, kVerifyFail = 1, kParamError = 2, kConvergence = 3 };

Rational parse_rational(const std::string& s) {
  Rational q;
  require(!s.empty() && q.set_str(s, 10) == 0, "cannot parse rational '" + s + "' (expected A or A/B)");
  require(q.get_den() != 0, "zero denominator in '" + s + "'");
  q.canonicalize();
  return q;
}

struct Args {
  unsigned p = 3;
  long N = 5;
  unsigned prec = 10;
  unsigned depth = 8;
  unsigned depth_cap = 12;
  unsigned d = 2;
  long r = 1, s = 1, a = 1;
  long Nprime = 0;
  std::string z = "1/2";
  std::string mode = "i";
  std::string c0 = "4", c1;
  std::string strategy = "blocked";
  std::string format = "json";
  std::uint64_t seed = 20240601;
  bool quick = false;
  bool no_timing = false;
};

json rational_json(const Rational& q) { return report::rational_str(q); }

FlatValue flat_from_arg(const std::string& text, unsigned p, unsigned K) {
  Rational q = parse_rational(text);
  require(q != 0 && valuation(q, p) == 0, "closed-form constants must be p-adic units");
  return {Rational(0), star(from_rational(q, p, K))};
}

// --- gamma -------------------------------------------------------------------

void gamma_eval(const Args& g, RunReport& rep) {
  Rational z = parse_rational(g.z);
  require(g.strategy == "blocked" || g.strategy == "direct", "--strategy must be blocked or direct");
  auto strat = g.strategy == "direct" ? ProductStrategy::direct : ProductStrategy::blocked;
  GammaValue v = gamma_p(z, g.p, g.prec, 5, strat);
  rep.results["z"] = rational_json(z);
  rep.results["approximant"] = v.approximant.get_str();
  rep.results["value"] = report::to_json(v.value);
}

void gamma_mult(const Args& g, RunReport& rep) {
  Rational z = parse_rational(g.z);
  FlatValue f = mult_check(g.d, z, g.p, g.prec);
  long loss = static_cast<long>(g.prec) - std::min<long>(f.identity_depth(), g.prec);
  rep.results["residual"] = report::to_json(f);
  rep.results["agreement_digits"] = std::min<long>(f.identity_depth(), g.prec);
  rep.pass = f.is_identity(static_cast<long>(g.prec) - 2);
  rep.results["loss"] = loss;
}

// --- char --------------------------------------------------------------------

void char_roundtrip(const Args& g, RunReport& rep) {
  require(g.depth >= 1, "--depth must be positive");
  std::mt19937_64 rng(g.seed);
  const unsigned K = g.prec;
  AlphaSequence a{{}, static_cast<long>(g.depth) + 1};
  for (unsigned k = 0; k < g.depth; ++k)
    a.entries.push_back(acceptance::detail::random_principal_unit(rng, g.p, K, k + 1));
  require(static_cast<long>(K) <= a.tail_valuation, "--prec exceeds what --depth can support (need prec <= depth+1)");
  GammaLikeFunction f = build_f(a, K);
  long fe_fail = 0, fe_total = 0;
  std::uniform_int_distribution<unsigned> dd(1, 6);
  for (int i = 0; i < 50; ++i) {
    unsigned d;
    do d = dd(rng);
    while (d % g.p == 0);
    Rational z = acceptance::detail::random_integral(rng, g.p);
    ++fe_total;
    if (!verify_fe(f, d, z).is_identity(K - 1)) ++fe_fail;
  }
  AlphaSequence back = alpha_from_c(extract_c(f, g.depth), a.tail_valuation);
  json alphas = json::array(), recovered = json::array();
  long mismatched = 0;
  for (unsigned k = 0; k < g.depth; ++k) {
    alphas.push_back(report::to_json(a.entries[k]));
    recovered.push_back(report::to_json(back.entries[k]));
    if (!back.entries[k].agrees_relative(a.entries[k], K - 1)) ++mismatched;
  }
  rep.results["alpha"] = alphas;
  rep.results["recovered"] = recovered;
  rep.results["fe_checks"] = fe_total;
  rep.results["fe_failures"] = fe_fail;
  rep.results["alpha_mismatches"] = mismatched;
  rep.pass = fe_fail == 0 && mismatched == 0;
}

void char_closed_form(const Args& g, RunReport& rep) {
  require(g.mode == "i" || g.mode == "ii", "--mode must be i or ii");
  const unsigned K = g.prec;
  const ClosedFormMode mode = g.mode == "i" ? ClosedFormMode::i : ClosedFormMode::ii;
  require(mode == ClosedFormMode::i || !g.c1.empty(), "mode ii needs --c1");
  FlatValue c0 = flat_from_arg(g.c0, g.p, K);
  FlatValue c1 = g.c1.empty() ? c0 : flat_from_arg(g.c1, g.p, K);
  GammaLikeFunction f = closed_form(c0, c1, mode);
  CSequence c = extract_c(f, g.depth);
  json cs = json::array();
  bool ok = true;
  for (unsigned k = 0; k < g.depth; ++k) {
    cs.push_back(report::to_json(c.entries[k]));
    const FlatValue& want = (k == 0 || mode == ClosedFormMode::i) ? c0 : c1;
    ok = ok && (c.entries[k] / want).is_identity(K - 1);
  }
  GammaLikeFunction h = build_f(closed_form_alpha(c0, c1, mode, g.depth), std::min(K, g.depth));
  std::mt19937_64 rng(g.seed);
  long fe_fail = 0, rec_fail = 0;
  for (int i = 0; i < 10; ++i) {
    Rational z = acceptance::detail::random_integral(rng, g.p);
    unsigned d = 1 + static_cast<unsigned>(i % 6);
    if (d % g.p == 0) ++d;
    if (!verify_fe(f, d, z).is_identity(K - 1)) ++fe_fail;
    if (!(flat(f(z)) / flat(h(z))).is_identity(static_cast<long>(std::min(K, g.depth)) - 1)) ++rec_fail;
  }
  rep.results["c"] = cs;
  rep.results["fe_failures"] = fe_fail;
  rep.results["reconstruction_failures"] = rec_fail;
  rep.pass = ok && fe_fail == 0 && rec_fail == 0;
}

// --- wp ----------------------------------------------------------------------

void wp_tau(const Args& g, RunReport& rep, bool inverse) {
  RationalPoint z(parse_rational(g.z), g.p);
  RationalPoint out = inverse ? tau_inv(z) : tau(z);
  rep.results["z"] = rational_json(z.value());
  rep.results[inverse ? "tau_inv" : "tau"] = rational_json(out.value());
  if (inverse) {
    Rational alt = digits(z.value(), g.p).z1 + 1;
    rep.results["z1_plus_1"] = rational_json(alt);
    rep.pass = alt == out.value();
  }
}

void wp_sets(const Args& g, RunReport& rep) {
  require(g.N >= 2 && g.N % g.p != 0, "--N must be at least 2 and prime to p");
  require(g.d >= 1 && g.d % g.p != 0, "--d must be positive and prime to p");
  long mult = 0, mult_fail = 0, s_fail = 0, t_fail = 0, st = 0;
  for (long a = 1; a < g.N; ++a) {
    Rational z(a, g.N);
    z.canonicalize();
    if (Rational(g.d) * z < 1) {
      ++mult;
      if (!check_mult_sets(z, g.d, g.p)) ++mult_fail;
    }
    if (Rational(g.p) * z < 1) {
      ++st;
      if (!check_s_set(z, g.p)) ++s_fail;
      if (!check_t_set(-z, g.p)) ++t_fail;
    }
  }
  rep.results["mult_set_points"] = mult;
  rep.results["mult_set_failures"] = mult_fail;
  rep.results["s_t_points"] = st;
  rep.results["s_set_failures"] = s_fail;
  rep.results["t_set_failures"] = t_fail;
  rep.pass = mult_fail == 0 && s_fail == 0 && t_fail == 0;
}

// --- ledger ------------------------------------------------------------------

void ledger_run(const Args& g, RunReport& rep, const std::string& which) {
  json rows = json::array();
  bool ok = true;
  auto row = [&](long a, bool pass) {
    rows.push_back({{"a", a}, {"pass", pass}});
    ok = ok && pass;
  };
  if (which == "reflection") {
    require(g.N >= 2, "--N must be at least 2");
    for (long a = 1; a < g.N; ++a) row(a, reflection_check(a, g.N));
  } else if (which == "multiplication") {
    require(g.N >= 2 && g.d >= 1 && g.N % g.d == 0, "--d must divide --N");
    for (long a = 1; a < g.N; ++a)
      if ((g.d * a) % g.N != 0) row(a, multiplication_check(a, g.N, g.d));
  } else if (which == "decompose") {
    require(g.N >= 3, "--N must be at least 3");
    for (long a = 1; a < g.N; ++a)
      if (std::gcd(a, g.N) == 1) row(a, decompose_identity(a, g.N));
  } else {
    require(g.Nprime >= 1 && g.Nprime % g.N == 0, "--Nprime must be a multiple of --N");
    std::mt19937_64 rng(g.seed);
    std::uniform_int_distribution<long> cd(-20, 20);
    auto random_vector = [&](long level) {
      PeriodVector v = PeriodVector::zero(level);
      for (auto& [b, c] : v.coeffs) c = Rational(cd(rng), 7);
      for (auto& [b, c] : v.coeffs) c.canonicalize();
      return v;
    };
    long adj_fail = 0;
    for (int i = 0; i < 20; ++i) {
      PeriodVector X = random_vector(g.Nprime), Y = random_vector(g.N);
      if (pairing(res_map(X, g.N), Y) != pairing(X, inf_map(Y, g.Nprime))) ++adj_fail;
    }
    rep.results["adjointness_failures"] = adj_fail;
    ok = adj_fail == 0;
    for (long a = 1; a < g.N; ++a)
      row(a, is_trivial(inf_map(gamma_divisor(a, g.N), g.Nprime) - gamma_divisor(a * (g.Nprime / g.N), g.Nprime)));
  }
  rep.results["rows"] = rows;
  rep.pass = ok;
}

// --- frob --------------------------------------------------------------------

json eigen_json(const FrobeniusEigenvalue& e) {
  json j;
  j["r"] = e.r;
  j["s"] = e.s;
  j["r_prime"] = e.r_prime;
  j["s_prime"] = e.s_prime;
  j["value"] = report::to_json(e.value);
  j["K"] = e.K;
  j["m"] = e.m;
  j["depths"] = e.depths;
  return j;
}

void frob_alpha(const Args& g, RunReport& rep) {
  FermatParams fp(g.p, g.N);
  rep.results["alpha"] = eigen_json(alpha_limit(g.r, g.s, fp, g.prec, g.depth_cap));
}

void frob_jacobi(const Args& g, RunReport& rep) {
  FermatParams fp(g.p, g.N);
  PadicNumber J = jacobi_oracle(g.r, g.s, fp, g.prec);
  rep.results["jacobi"] = report::to_json(J);
}

void frob_match(const Args& g, RunReport& rep) {
  FermatParams fp(g.p, g.N);
  FrobeniusEigenvalue e = alpha_limit(g.r, g.s, fp, g.prec, g.depth_cap);
  MatchReport m = oracle_match(e, fp, g.prec);
  json ms = json::array();
  for (const auto& c : m.matches) ms.push_back({{"sign", c.sign}, {"e", c.e}, {"t", c.t}});
  rep.results["alpha"] = eigen_json(e);
  rep.results["matches"] = ms;
  rep.pass = m.unique();
}

void frob_coleman(const Args& g, RunReport& rep) {
  FermatParams fp(g.p, g.N);
  ColemanReport c = coleman_check(g.a, fp, g.prec, g.depth_cap);
  rep.results["residual"] = report::to_json(c.residual);
  rep.results["agreement_digits"] = std::min<long>(c.residual.identity_depth(), g.prec);
  rep.results["total_valuation"] = c.total_valuation;
  rep.results["star_prod_alpha"] = report::to_json(c.U);
  rep.results["star_gamma_pow_N"] = report::to_json(c.V);
  json as = json::array();
  for (const auto& e : c.alphas) as.push_back(eigen_json(e));
  rep.results["alphas"] = as;
  rep.pass = c.ok(static_cast<long>(g.prec) - 2);
}

// --- suite -------------------------------------------------------------------

void suite_acceptance(const Args& g, RunReport& rep) {
  acceptance::Options o;
  o.seed = g.seed;
  o.quick = g.quick;
  json rows = json::array();
  bool ok = true;
  for (const auto& r : acceptance::run_all(o)) {
    std::cerr << acceptance::format_line(r) << "\n";
    rows.push_back({{"id", r.id}, {"title", r.title}, {"pass", r.pass}, {"checks", r.checks},
                    {"failures", r.failures}, {"detail", r.detail}});
    ok = ok && r.pass;
  }
  rep.results["criteria"] = rows;
  rep.pass = ok;
}

/// The leaf command's options as given, plus the effective precision and seed where they apply.
json leaf_parameters(const CLI::App& leaf, const Args& g) {
  json params = json::object();
  for (const CLI::Option* o : leaf.get_options()) {
    if (o->get_name() == "--help" || o->count() == 0) continue;
    std::string key = o->get_name().substr(2);
    std::string text = o->results().empty() ? "true" : o->results().front();
    bool integral = !text.empty() && text.find_first_not_of("0123456789") == std::string::npos;
    params[key] = integral ? json(std::stoull(text)) : json(text);
  }
  if (leaf.get_option_no_throw("--prec") != nullptr) params["prec"] = g.prec;
  params["seed"] = g.seed;
  return params;
}

}  // namespace

int main(int argc, char** argv) {
  Args g;
  if (const char* env = std::getenv("PADIC_PREC")) {
    try {
      g.prec = static_cast<unsigned>(std::stoul(env));
    } catch (const std::exception&) {
      std::cerr << "error: PADIC_PREC must be a positive integer\n";
      return kParamError;
    }
  }

  CLI::App app{"exact p-adic computations: Morita gamma, gamma-like functions, period exponents, Fermat Frobenius"};
  app.require_subcommand(1);
  app.fallthrough();  // global options may follow the subcommand path
  app.add_option("--format", g.format, "output format")->check(CLI::IsMember({"json", "tsv"}));
  app.add_option("--seed", g.seed, "seed for randomized checks");
  app.add_flag("--no-timing", g.no_timing, "omit timing from the report");

  std::string leaf;
  CLI::App* leaf_app = nullptr;
  auto leafcmd = [&](CLI::App* parent, const std::string& name, const std::string& help) {
    CLI::App* c = parent->add_subcommand(name, help);
    c->callback([&leaf, &leaf_app, c, parent, name] {
      leaf = parent->get_name() + " " + name;
      leaf_app = c;
    });
    return c;
  };
  auto opt_p = [&](CLI::App* c) { c->add_option("--p", g.p, "odd prime")->required(); };
  auto opt_prec = [&](CLI::App* c) { c->add_option("--prec", g.prec, "precision in base-p digits (env PADIC_PREC)"); };

  CLI::App* gamma = app.add_subcommand("gamma", "Morita gamma")->require_subcommand(1);
  CLI::App* ge = leafcmd(gamma, "eval", "Gamma_p(z)");
  opt_p(ge), opt_prec(ge);
  ge->add_option("--z", g.z, "p-integral rational A/B")->required();
  ge->add_option("--strategy", g.strategy, "blocked|direct");
  CLI::App* gm = leafcmd(gamma, "mult-check", "multiplication formula residual");
  opt_p(gm), opt_prec(gm);
  gm->add_option("--d", g.d)->required();
  gm->add_option("--z", g.z)->required();

  CLI::App* ch = app.add_subcommand("char", "gamma-like functions")->require_subcommand(1);
  CLI::App* cr = leafcmd(ch, "roundtrip", "alpha -> f -> c -> alpha");
  opt_p(cr), opt_prec(cr);
  cr->add_option("--depth", g.depth);
  cr->add_option("--seed", g.seed);
  CLI::App* cc = leafcmd(ch, "closed-form", "closed forms, modes i and ii");
  opt_p(cc), opt_prec(cc);
  cc->add_option("--mode", g.mode)->required();
  cc->add_option("--c0", g.c0, "p-adic unit; its star part is used")->required();
  cc->add_option("--c1", g.c1);
  cc->add_option("--depth", g.depth);

  CLI::App* wp = app.add_subcommand("wp", "Weil action on Q/Z")->require_subcommand(1);
  CLI::App* wt = leafcmd(wp, "tau", "<pz>");
  CLI::App* wti = leafcmd(wp, "tau-inv", "z_1 + 1");
  for (CLI::App* c : {wt, wti}) {
    opt_p(c);
    c->add_option("--z", g.z, "a/N in (0,1)")->required();
  }
  CLI::App* ws = leafcmd(wp, "set-checks", "multiplication, s- and t-set identities");
  opt_p(ws);
  ws->add_option("--N", g.N)->required();
  ws->add_option("--d", g.d);

  CLI::App* ld = app.add_subcommand("ledger", "period exponent identities")->require_subcommand(1);
  for (const char* name : {"reflection", "multiplication", "decompose", "resinf"}) {
    CLI::App* c = leafcmd(ld, name, std::string(name) + " identity");
    c->add_option("--N", g.N)->required();
    c->add_option("--d", g.d);
    c->add_option("--Nprime", g.Nprime);
  }

  CLI::App* fr = app.add_subcommand("frob", "Fermat-curve Frobenius")->require_subcommand(1);
  for (auto [name, help] : {std::pair{"alpha", "Frobenius eigenvalue by the limit formula"},
                             std::pair{"jacobi", "Jacobi sum in Teichmuller characters (p = 1 mod N)"},
                             std::pair{"match", "search +-p^t J(chi_er, chi_es) agreeing with alpha"}}) {
    CLI::App* c = leafcmd(fr, name, help);
    opt_p(c), opt_prec(c);
    c->add_option("--N", g.N)->required();
    c->add_option("--r", g.r)->required();
    c->add_option("--s", g.s)->required();
    c->add_option("--depth-cap", g.depth_cap);
  }
  CLI::App* fc = leafcmd(fr, "coleman", "star(prod alpha) vs star(Gamma_p(a/N))^N");
  opt_p(fc), opt_prec(fc);
  fc->add_option("--N", g.N)->required();
  fc->add_option("--a", g.a)->required();
  fc->add_option("--depth-cap", g.depth_cap);

  CLI::App* su = app.add_subcommand("suite", "verification suites")->require_subcommand(1);
  CLI::App* sa = leafcmd(su, "acceptance", "the acceptance matrix");
  sa->add_flag("--quick", g.quick);
  sa->add_option("--seed", g.seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kParamError;
  }

  RunReport rep;
  rep.command = leaf;
  rep.parameters = leaf_parameters(*leaf_app, g);
  auto t0 = std::chrono::steady_clock::now();
  int code = kPass;
  try {
    if (leaf == "gamma eval") gamma_eval(g, rep);
    else if (leaf == "gamma mult-check") gamma_mult(g, rep);
    else if (leaf == "char roundtrip") char_roundtrip(g, rep);
    else if (leaf == "char closed-form") char_closed_form(g, rep);
    else if (leaf == "wp tau") wp_tau(g, rep, false);
    else if (leaf == "wp tau-inv") wp_tau(g, rep, true);
    else if (leaf == "wp set-checks") wp_sets(g, rep);
    else if (leaf.rfind("ledger ", 0) == 0) ledger_run(g, rep, leaf.substr(7));
    else if (leaf == "frob alpha") frob_alpha(g, rep);
    else if (leaf == "frob jacobi") frob_jacobi(g, rep);
    else if (leaf == "frob match") frob_match(g, rep);
    else if (leaf == "frob coleman") frob_coleman(g, rep);
    else if (leaf == "suite acceptance") suite_acceptance(g, rep);
    code = rep.pass ? kPass : kVerifyFail;
  } catch (const convergence_error& e) {
    std::cerr << "convergence failure: " << e.what() << "\n";
    rep.pass = false;
    rep.results["error"] = e.what();
    code = kConvergence;
  } catch (const precondition_error& e) {
    std::cerr << "parameter error: " << e.what() << "\n";
    return kParamError;
  }
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  json out = rep.to_json(!g.no_timing);
  if (g.format == "tsv")
    std::cout << report::to_tsv(out);
  else
    std::cout << out.dump(2) << "\n";
  return code;
}
