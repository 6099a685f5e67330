#pragma once

// The acceptance matrix: ten end-to-end checks shared by the acceptance test
// binary and `padic suite acceptance`. Each run is deterministic in its seed.

#include <padic/padic.hpp>

#include <chrono>
#include <cstdint>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

namespace padic::acceptance {

struct Options {
  std::uint64_t seed = 20240601;
  bool quick = false;  // drops the slow p = 31 oracle run and shrinks sample counts
};

struct CriterionResult {
  int id = 0;
  std::string title;
  bool pass = true;
  long checks = 0;
  long failures = 0;
  std::string detail;
  double seconds = 0;
};

namespace detail {

class Recorder {
 public:
  explicit Recorder(CriterionResult& r) : r_(r) {}
  void check(bool ok, const std::string& what) {
    ++r_.checks;
    if (ok) return;
    ++r_.failures;
    r_.pass = false;
    if (shown_++ < 4) r_.detail += (r_.detail.empty() ? "" : "; ") + what;
  }
  void note(const std::string& s) { r_.detail += (r_.detail.empty() ? "" : "; ") + s; }

 private:
  CriterionResult& r_;
  int shown_ = 0;
};

/// A p-integral rational a/b with |a| <= 10^9 and 1 <= b <= 10^4.
inline Rational random_integral(std::mt19937_64& rng, unsigned p) {
  std::uniform_int_distribution<long> num(-1000000000L, 1000000000L), den(1, 10000);
  long b;
  do b = den(rng);
  while (b % p == 0);
  Rational q(num(rng), b);
  q.canonicalize();
  return q;
}

inline PadicNumber random_principal_unit(std::mt19937_64& rng, unsigned p, unsigned K, unsigned min_val = 1) {
  Integer mod = pow_int(p, K);
  std::uniform_int_distribution<unsigned long> d(0, p - 1);
  Integer t = 0;
  for (unsigned i = 0; i < K; ++i) t = t * p + d(rng);
  return PadicNumber::from_unit(p, 0, reduce(1 + pow_int(p, min_val) * t, mod), K);
}

inline std::string str(const Rational& q) { return q.get_str(); }

template <class F>
CriterionResult timed(int id, std::string title, F&& body) {
  CriterionResult r;
  r.id = id;
  r.title = std::move(title);
  auto t0 = std::chrono::steady_clock::now();
  try {
    body(r);
  } catch (const std::exception& e) {
    r.pass = false;
    r.detail += (r.detail.empty() ? "" : "; ") + std::string("exception: ") + e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

}  // namespace detail

inline CriterionResult defining_relation(const Options& o) {
  return detail::timed(1, "Gamma_p(z+1)/Gamma_p(z) = -z or -1, 200 z per p in {3,5,7}, K=10", [&](CriterionResult& r) {
    detail::Recorder rec(r);
    std::mt19937_64 rng(o.seed + 1);
    const int samples = o.quick ? 40 : 200;
    for (unsigned p : {3u, 5u, 7u}) {
      for (int i = 0; i < samples; ++i) {
        Rational z = detail::random_integral(rng, p);
        if (i % 5 == 0) z *= p;  // exercise the p | z branch
        PadicNumber got = ratio_check(z, p, 10);
        PadicNumber want = ratio_expected(z, p, 10);
        rec.check(got.agrees_relative(want, 10), "p=" + std::to_string(p) + " z=" + detail::str(z));
      }
    }
  });
}

inline CriterionResult approximant_stability(const Options& o) {
  return detail::timed(2, "gamma_int(n) = gamma_int(n') mod p^k when n = n' mod p^k, k<=8", [&](CriterionResult& r) {
    detail::Recorder rec(r);
    std::mt19937_64 rng(o.seed + 2);
    const int pairs = o.quick ? 30 : 100;
    for (unsigned p : {3u, 5u, 7u}) {
      PrimeContext ctx(p, 8);
      for (int i = 0; i < pairs; ++i) {
        unsigned k = 1 + static_cast<unsigned>(i % 8);
        std::uint64_t pk = to_u64(pow_int(p, k));
        std::uniform_int_distribution<std::uint64_t> nd(0, pk - 1), td(1, 3);
        std::uint64_t n = nd(rng), n2 = n + td(rng) * pk;
        bool ok = gamma_int(n, ctx).residue(k) == gamma_int(n2, ctx).residue(k);
        rec.check(ok, "p=" + std::to_string(p) + " k=" + std::to_string(k) + " n=" + std::to_string(n) +
                          " n'=" + std::to_string(n2));
      }
    }
  });
}

inline CriterionResult multiplication_formula(const Options& o) {
  return detail::timed(3, "prod_k Gamma_p(z+k/d) / d^{1-dz+(dz)_1} Gamma_p(dz) is flat-trivial, K=10, loss<=2",
                       [&](CriterionResult& r) {
                         detail::Recorder rec(r);
                         std::mt19937_64 rng(o.seed + 3);
                         const int samples = o.quick ? 5 : 20;
                         long worst = 10;
                         for (unsigned p : {3u, 5u, 7u}) {
                           for (unsigned d = 1; d <= 6; ++d) {
                             if (d % p == 0) continue;
                             for (int i = 0; i < samples; ++i) {
                               Rational z = detail::random_integral(rng, p);
                               FlatValue f = mult_check(d, z, p, 10);
                               worst = std::min(worst, f.identity_depth());
                               rec.check(f.is_identity(8), "p=" + std::to_string(p) + " d=" + std::to_string(d) +
                                                               " z=" + detail::str(z));
                             }
                           }
                         }
                         rec.note("min agreement " + std::to_string(worst) + " digits");
                       });
}

inline CriterionResult characterization_roundtrip(const Options& o) {
  return detail::timed(4, "alpha -> f -> (fe) on 50 (d,z) -> c -> alpha, depth 8", [&](CriterionResult& r) {
    detail::Recorder rec(r);
    std::mt19937_64 rng(o.seed + 4);
    const unsigned D = 8, K = 8;
    const int samples = o.quick ? 10 : 50;
    for (unsigned p : {3u, 5u, 7u}) {
      AlphaSequence a{{}, static_cast<long>(D) + 1};
      for (unsigned k = 0; k < D; ++k) a.entries.push_back(detail::random_principal_unit(rng, p, K, k + 1));
      GammaLikeFunction f = build_f(a, K);
      std::uniform_int_distribution<unsigned> dd(1, 6);
      for (int i = 0; i < samples; ++i) {
        unsigned d;
        do d = dd(rng);
        while (d % p == 0);
        Rational z = detail::random_integral(rng, p);
        rec.check(verify_fe(f, d, z).is_identity(K - 1),
                  "fe p=" + std::to_string(p) + " d=" + std::to_string(d) + " z=" + detail::str(z));
      }
      AlphaSequence back = alpha_from_c(extract_c(f, D), a.tail_valuation);
      for (unsigned k = 0; k < D; ++k)
        rec.check(back.entries[k].agrees_relative(a.entries[k], K - 1),
                  "alpha p=" + std::to_string(p) + " k=" + std::to_string(k));
    }
  });
}

inline CriterionResult closed_forms(const Options& o) {
  return detail::timed(5, "closed forms c0^{z-1/2} and c0^{z-1/2}(c1/c0)^{z_1+1/2}, both directions",
                       [&](CriterionResult& r) {
                         detail::Recorder rec(r);
                         std::mt19937_64 rng(o.seed + 5);
                         const unsigned K = 8, D = 8;
                         const int samples = o.quick ? 5 : 15;
                         for (unsigned p : {3u, 5u, 7u}) {
                           FlatValue c0{0, detail::random_principal_unit(rng, p, K)};
                           FlatValue c1{0, detail::random_principal_unit(rng, p, K)};
                           for (ClosedFormMode mode : {ClosedFormMode::i, ClosedFormMode::ii}) {
                             std::string tag = std::string("p=") + std::to_string(p) +
                                               (mode == ClosedFormMode::i ? " mode i" : " mode ii");
                             GammaLikeFunction f = closed_form(c0, c1, mode);
                             CSequence c = extract_c(f, D);
                             for (unsigned k = 0; k < D; ++k) {
                               const FlatValue& want = (k == 0 || mode == ClosedFormMode::i) ? c0 : c1;
                               rec.check((c.entries[k] / want).is_identity(K - 1), tag + " c_" + std::to_string(k));
                             }
                             GammaLikeFunction g = build_f(closed_form_alpha(c0, c1, mode, D), D);
                             std::uniform_int_distribution<unsigned> dd(1, 6);
                             for (int i = 0; i < samples; ++i) {
                               Rational z = detail::random_integral(rng, p);
                               unsigned d;
                               do d = dd(rng);
                               while (d % p == 0);
                               rec.check(verify_fe(f, d, z).is_identity(K - 1), tag + " fe z=" + detail::str(z));
                               rec.check((flat(f(z)) / flat(g(z))).is_identity(D - 1),
                                         tag + " reconstruct z=" + detail::str(z));
                             }
                           }
                         }
                       });
}

inline CriterionResult weil_identities(const Options&) {
  return detail::timed(6, "tau^{-1}(z) = z_1 + 1 (N<=50); multiplication, s- and t-set identities (N<=30, d<=6)",
                       [&](CriterionResult& r) {
                         detail::Recorder rec(r);
                         for (unsigned p : {3u, 5u, 7u}) {
                           for (long N = 2; N <= 50; ++N) {
                             if (N % p == 0) continue;
                             for (long a = 1; a < N; ++a) {
                               RationalPoint z(a, N, p);
                               Rational want = digits(z.value(), p).z1 + 1;
                               rec.check(tau_inv(z).value() == want && tau(tau_inv(z)) == z && tau_inv(tau(z)) == z,
                                         "tau p=" + std::to_string(p) + " " + std::to_string(a) + "/" +
                                             std::to_string(N));
                             }
                           }
                           for (long N = 2; N <= 30; ++N) {
                             if (N % p == 0) continue;
                             for (long a = 1; a < N; ++a) {
                               Rational z(a, N);
                               z.canonicalize();
                               for (unsigned d = 1; d <= 6; ++d) {
                                 if (d % p == 0 || Rational(d) * z >= 1) continue;
                                 rec.check(check_mult_sets(z, d, p), "mult-set p=" + std::to_string(p) + " z=" +
                                                                         detail::str(z) + " d=" + std::to_string(d));
                               }
                               if (Rational(p) * z < 1) {
                                 rec.check(check_s_set(z, p), "s-set p=" + std::to_string(p) + " z=" + detail::str(z));
                                 rec.check(check_t_set(-z, p), "t-set p=" + std::to_string(p) + " z=-" + detail::str(z));
                                 if (digits(z, p).z0 == 1)
                                   rec.check(!s_t_witness(z, p).equal(), "witness p=" + std::to_string(p));
                               }
                             }
                           }
                         }
                       });
}

inline CriterionResult ledger_identities(const Options& o) {
  return detail::timed(7, "reflection (N<=50), multiplication and decomposition (N<=30), Res/Inf", [&](CriterionResult& r) {
    detail::Recorder rec(r);
    for (long N = 2; N <= 50; ++N)
      for (long a = 1; a < N; ++a)
        rec.check(reflection_check(a, N), "reflection " + std::to_string(a) + "/" + std::to_string(N));
    for (long N = 2; N <= 30; ++N)
      for (long d = 2; d <= N; ++d) {
        if (N % d != 0) continue;
        for (long a = 1; a < N; ++a) {
          if ((d * a) % N == 0) continue;
          rec.check(multiplication_check(a, N, d),
                    "multiplication a=" + std::to_string(a) + " N=" + std::to_string(N) + " d=" + std::to_string(d));
        }
      }
    for (long N = 3; N <= 30; ++N)
      for (long a = 1; a < N; ++a)
        if (std::gcd(a, N) == 1)
          rec.check(decompose_identity(a, N), "decompose a=" + std::to_string(a) + " N=" + std::to_string(N));
    std::mt19937_64 rng(o.seed + 7);
    std::uniform_int_distribution<long> cd(-20, 20);
    auto random_vector = [&](long N) {
      PeriodVector v = PeriodVector::zero(N);
      for (auto& [b, c] : v.coeffs) c = Rational(cd(rng), 1 + (cd(rng) + 20) % 7);
      for (auto& [b, c] : v.coeffs) c.canonicalize();
      v.piExp = Rational(cd(rng), 6);
      v.piExp.canonicalize();
      return v;
    };
    for (auto [N, Np] : {std::pair<long, long>{5, 15}, {4, 12}, {7, 21}}) {
      std::string tag = "(" + std::to_string(N) + "," + std::to_string(Np) + ")";
      for (int i = 0; i < 20; ++i) {
        PeriodVector X = random_vector(Np), Y = random_vector(N);
        rec.check(pairing(res_map(X, N), Y) == pairing(X, inf_map(Y, Np)), "adjointness " + tag);
        PeriodVector back = res_map(inf_map(Y, Np), N);
        Rational lifts(static_cast<long>(units_mod(Np).size()), static_cast<long>(units_mod(N).size()));
        lifts.canonicalize();
        PeriodVector scaled = Y * lifts;
        scaled.piExp = Y.piExp;
        rec.check(back == scaled, "Res o Inf " + tag);
      }
      for (long a = 1; a < N; ++a) {
        PeriodVector diff = inf_map(gamma_divisor(a, N), Np) - gamma_divisor(a * (Np / N), Np);
        rec.check(is_trivial(diff), "level compatibility a=" + std::to_string(a) + " " + tag);
      }
    }
  });
}

inline CriterionResult limit_convergence(const Options&) {
  return detail::timed(8, "alpha_{r',s'} stable over three distinct depths at K=6", [&](CriterionResult& r) {
    detail::Recorder rec(r);
    unsigned deepest = 0;
    for (auto [p, N] : {std::pair<unsigned, long>{3, 5}, {3, 7}, {5, 7}, {7, 5}}) {
      FermatParams fp(p, N);
      for (long a = 1; a < N; ++a)
        for (long b = 1; b < N; ++b) {
          if (a + b == N) continue;
          std::string tag = "p=" + std::to_string(p) + " N=" + std::to_string(N) + " (r,s)=(" + std::to_string(a) +
                            "," + std::to_string(b) + ")";
          try {
            FrobeniusEigenvalue e = alpha_limit(a, b, fp, 6);
            std::size_t n = e.iterates.size();
            bool three = n >= 3 && e.iterates[n - 1].agrees_relative(e.iterates[n - 2], 6) &&
                         e.iterates[n - 2].agrees_relative(e.iterates[n - 3], 6);
            deepest = std::max(deepest, e.depths.back());
            rec.check(three, tag);
          } catch (const convergence_error& ex) {
            rec.check(false, tag + " " + ex.what());
          }
        }
    }
    rec.note("deepest iterate m=" + std::to_string(deepest));
  });
}

inline CriterionResult oracle_equivalence(const Options& o) {
  return detail::timed(9, "alpha matches +-p^t J(chi_er, chi_es) uniquely, p=11 and p=31, N=5, K=5",
                       [&](CriterionResult& r) {
                         detail::Recorder rec(r);
                         std::vector<unsigned> primes{11};
                         if (!o.quick) primes.push_back(31);
                         for (unsigned p : primes) {
                           FermatParams fp(p, 5);
                           for (long a = 1; a < 5; ++a)
                             for (long b = 1; b < 5; ++b) {
                               if (a + b == 5) continue;
                               FrobeniusEigenvalue e = alpha_limit(a, b, fp, 5);
                               MatchReport m = oracle_match(e, fp, 5);
                               rec.check(m.unique(), "p=" + std::to_string(p) + " (r,s)=(" + std::to_string(a) + "," +
                                                         std::to_string(b) + ") matches=" +
                                                         std::to_string(m.matches.size()));
                             }
                         }
                         if (o.quick) rec.note("p=31 skipped (--quick)");
                       });
}

inline CriterionResult coleman_consistency(const Options&) {
  return detail::timed(10, "star(Gamma_p(a'/N))^N = star(prod_s' alpha_{a',s'}) at K=6, loss<=2",
                       [&](CriterionResult& r) {
                         detail::Recorder rec(r);
                         const unsigned K = 6;
                         std::vector<std::tuple<unsigned, long, long>> cases{{3, 5, 1}, {3, 5, 2}, {3, 5, 3},
                                                                             {3, 5, 4}, {5, 7, 1}};
                         for (auto [p, N, a] : cases) {
                           ColemanReport rep = coleman_check(a, FermatParams(p, N), K);
                           PadicNumber inverse = rep.U * rep.V;
                           long inv_depth = (inverse - one(p, K)).valuation();
                           rec.check(rep.ok(K - 2), "p=" + std::to_string(p) + " N=" + std::to_string(N) +
                                                        " a'=" + std::to_string(a) + " agreement " +
                                                        std::to_string(rep.residual.identity_depth()) +
                                                        " digits (U*V: " + std::to_string(inv_depth) + ")");
                         }
                       });
}

inline std::vector<std::function<CriterionResult(const Options&)>> matrix() {
  return {defining_relation,          approximant_stability, multiplication_formula, characterization_roundtrip,
          closed_forms,               weil_identities,       ledger_identities,      limit_convergence,
          oracle_equivalence,         coleman_consistency};
}

inline std::vector<CriterionResult> run_all(const Options& o) {
  std::vector<CriterionResult> out;
  for (auto& c : matrix()) out.push_back(c(o));
  return out;
}

inline std::string format_line(const CriterionResult& r) {
  std::ostringstream os;
  os << (r.pass ? "PASS" : "FAIL") << "  [" << (r.id < 10 ? " " : "") << r.id << "] " << r.title << "  ("
     << r.checks - r.failures << "/" << r.checks << " checks, " << static_cast<long>(r.seconds * 1000) << " ms)";
  if (!r.detail.empty()) os << "  " << r.detail;
  return os.str();
}

}  // namespace padic::acceptance
