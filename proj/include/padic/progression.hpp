#pragma once

// Products over arithmetic progressions in Z_(p):
//
//   prod_{0 <= j < n} (y + j)      y a p-integral rational
//
// returned as an exact valuation plus a unit modulo p^K. This is the kernel
// behind Morita gamma (y = 1, units only) and the p-adic binomial
// coefficients of the Fermat-curve limit formula.
//
// Two strategies:
//
//  * direct  - one multiplication per factor; each factor's valuation is
//              read off its exact integer form. O(n).
//  * blocked - the factors divisible by p are themselves p times a
//              progression of step 1, so the valuation is an exact
//              recursion on rationals. The unit factors of a block of
//              length p^e starting at an offset u in p^e Z_p form a
//              polynomial R_e(u) of degree < K modulo p^K (higher terms
//              have valuation >= K), and R_{e+1}(u) = prod_i R_e(u + i p^e).
//              O(K^2 p log_p n).
//
// The two are independent routes; tests hold them equal.

#include <padic/arith.hpp>

#include <cstdint>
#include <vector>

namespace padic {

enum class ProductStrategy { direct, blocked };

/// p^valuation * unit, or an exact zero.
struct ValuedUnit {
  bool zero = false;
  long valuation = 0;
  Integer unit = 1;  // modulo p^K
};

namespace detail {

inline std::vector<unsigned> base_p_digits(Integer n, unsigned p) {
  std::vector<unsigned> d;
  while (n > 0) {
    d.push_back(static_cast<unsigned>(mpz_fdiv_ui(n.get_mpz_t(), p)));
    mpz_fdiv_q_ui(n.get_mpz_t(), n.get_mpz_t(), p);
  }
  return d;
}

/// prod_{j < n, p does not divide y + j} (y + j) modulo p^K by block polynomials.
template <class Ring>
class BlockedUnitProduct {
 public:
  using value = typename Ring::value_type;
  using poly = std::vector<value>;

  BlockedUnitProduct(const Ring& ring, unsigned p, unsigned K, const Integer& y_residue)
      : R_(ring), p_(p), D_(K), y_(ring.from(y_residue)),
        y_mod_p_(static_cast<unsigned>(mpz_fdiv_ui(y_residue.get_mpz_t(), p))) {}

  value evaluate(const Integer& count) {
    std::vector<unsigned> d = base_p_digits(count, p_);
    value result = R_.one();
    value offset = R_.zero();
    for (std::size_t e = d.size(); e-- > 1;) {
      const poly& block = level(static_cast<unsigned>(e));
      value step = stride(static_cast<unsigned>(e));
      for (unsigned i = 0; i < d[e]; ++i) {
        result = R_.mul(result, eval(block, offset));
        offset = R_.add(offset, step);
      }
    }
    // offset is a multiple of p here, so divisibility depends only on y + i.
    if (!d.empty()) {
      for (unsigned i = 0; i < d[0]; ++i) {
        if ((y_mod_p_ + i) % p_ == 0) continue;
        result = R_.mul(result, R_.add(R_.add(y_, offset), R_.from_i64(i)));
      }
    }
    return result;
  }

 private:
  value eval(const poly& P, const value& u) const {
    value acc = R_.zero();
    for (std::size_t j = P.size(); j-- > 0;) acc = R_.add(R_.mul(acc, u), P[j]);
    return acc;
  }

  poly multiply(const poly& A, const poly& B) const {
    poly C(D_, R_.zero());
    for (unsigned i = 0; i < D_; ++i) {
      if (R_.is_zero(A[i])) continue;
      for (unsigned j = 0; i + j < D_; ++j) C[i + j] = R_.add(C[i + j], R_.mul(A[i], B[j]));
    }
    return C;
  }

  /// Q(u) = P(u + c), truncated to degree < D.
  poly shift(const poly& P, const value& c) const {
    poly Q(D_, R_.zero());
    for (std::size_t j = D_; j-- > 0;) {
      for (unsigned i = D_ - 1; i > 0; --i) Q[i] = R_.add(R_.mul(Q[i], c), Q[i - 1]);
      Q[0] = R_.add(R_.mul(Q[0], c), P[j]);
    }
    return Q;
  }

  value stride(unsigned e) {
    while (strides_.size() <= e) {
      strides_.push_back(strides_.empty() ? R_.one() : R_.mul(strides_.back(), R_.from_i64(p_)));
    }
    return strides_[e];
  }

  const poly& level(unsigned e) {
    if (levels_.empty()) {
      poly P(D_, R_.zero());
      P[0] = R_.one();
      for (unsigned j = 0; j < p_; ++j) {
        if ((y_mod_p_ + j) % p_ == 0) continue;
        poly lin(D_, R_.zero());
        lin[0] = R_.add(y_, R_.from_i64(j));
        if (D_ > 1) lin[1] = R_.one();
        P = multiply(P, lin);
      }
      levels_.push_back(std::move(P));  // levels_[0] is R_1
    }
    while (levels_.size() < e) {
      unsigned have = static_cast<unsigned>(levels_.size());  // R_have is the last entry
      value step = stride(have);
      poly next(D_, R_.zero());
      next[0] = R_.one();
      value c = R_.zero();
      for (unsigned i = 0; i < p_; ++i) {
        next = multiply(next, shift(levels_.back(), c));
        c = R_.add(c, step);
      }
      levels_.push_back(std::move(next));
    }
    return levels_[e - 1];
  }

  Ring R_;
  unsigned p_;
  unsigned D_;
  value y_;
  unsigned y_mod_p_;
  std::vector<poly> levels_;
  std::vector<value> strides_;
};

}  // namespace detail

/// prod_{0 <= j < count, p does not divide y + j} (y + j) mod p^K, y a residue.
inline Integer unit_progression_product(const Integer& y_residue, const Integer& count, unsigned p, unsigned K,
                                        ProductStrategy strategy = ProductStrategy::blocked) {
  Integer mod = pow_int(p, K);
  Integer y = reduce(y_residue, mod);
  return with_ring(mod, [&](auto ring) -> Integer {
    using R = decltype(ring);
    if (strategy == ProductStrategy::blocked) {
      detail::BlockedUnitProduct<R> engine(ring, p, K, y);
      return ring.to_integer(engine.evaluate(count));
    }
    require(fits_u64(count), "direct product: count too large");
    std::uint64_t n = to_u64(count);
    auto acc = ring.one();
    auto t = ring.from(y);
    auto step = ring.one();
    unsigned r = static_cast<unsigned>(mpz_fdiv_ui(y.get_mpz_t(), p));
    for (std::uint64_t j = 0; j < n; ++j) {
      if (r != 0) acc = ring.mul(acc, t);
      t = ring.add(t, step);
      if (++r == p) r = 0;
    }
    return ring.to_integer(acc);
  });
}

namespace detail {

inline bool hits_zero(const Rational& y, const Integer& count) {
  if (y.get_den() != 1) return false;
  Integer a = y.get_num();
  return a <= 0 && -a < count;
}

/// Every factor handled individually: (a + j b) / b with exact integer valuation.
inline ValuedUnit progression_direct(const Rational& y, const Integer& count, unsigned p, unsigned K) {
  require(fits_u64(count), "direct product: count too large");
  const Integer a = y.get_num(), b = y.get_den();
  const Integer mod = pow_int(p, K);
  const std::uint64_t n = to_u64(count);
  ValuedUnit out;
  Integer binv_pow = pow_mod(inverse_mod(b, mod), Integer(count), mod);
  const bool small = a.fits_slong_p() && b.fits_slong_p() && abs(a) < (Integer(1) << 40) &&
                     b < (Integer(1) << 20) && n < (std::uint64_t(1) << 40);
  out.unit = with_ring(mod, [&](auto ring) -> Integer {
    auto acc = ring.one();
    if (small) {
      const __int128 A = a.get_si(), B = b.get_si();
      for (std::uint64_t j = 0; j < n; ++j) {
        __int128 t = A + static_cast<__int128>(j) * B;
        while (t % p == 0) {
          t /= p;
          ++out.valuation;
        }
        std::int64_t r = static_cast<std::int64_t>(t % static_cast<__int128>(mod.get_ui()));
        acc = ring.mul(acc, ring.from_i64(r));
      }
    } else {
      Integer t = a;
      for (std::uint64_t j = 0; j < n; ++j, t += b) {
        long v = valuation(t, p);
        out.valuation += v;
        acc = ring.mul(acc, ring.from(strip_p(t, p)));
      }
    }
    return ring.to_integer(acc);
  });
  out.unit = reduce(out.unit * binv_pow, mod);
  return out;
}

}  // namespace detail

/// prod_{0 <= j < count} (y + j) for a p-integral rational y.
inline ValuedUnit progression_product(const Rational& y, const Integer& count, unsigned p, unsigned K,
                                      ProductStrategy strategy = ProductStrategy::blocked) {
  require(mpz_divisible_ui_p(y.get_den().get_mpz_t(), p) == 0, "progression_product: y is not p-integral");
  require(count >= 0, "progression_product: negative count");
  if (detail::hits_zero(y, count)) return ValuedUnit{true, 0, 0};
  if (strategy == ProductStrategy::direct && fits_u64(count) &&
      pow_int(p, K) < (Integer(1) << 62))
    return detail::progression_direct(y, count, p, K);

  const Integer mod = pow_int(p, K);
  ValuedUnit out;
  Rational cur = y;
  Integer n = count;
  while (n > 0) {
    Integer ymod = rational_residue(cur, mod);
    out.unit = reduce(out.unit * unit_progression_product(ymod, n, p, K, strategy), mod);
    Integer j0 = reduce(-ymod, Integer(p));
    if (j0 >= n) break;
    Integer c = (n - 1 - j0) / p + 1;
    require(c.fits_slong_p(), "progression_product: valuation overflow");
    out.valuation += c.get_si();
    cur = (cur + Rational(j0)) / Rational(p);
    cur.canonicalize();
    n = c;
  }
  return out;
}

}  // namespace padic
