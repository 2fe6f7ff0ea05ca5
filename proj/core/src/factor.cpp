#include "chistar/factor.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <random>
#include <stdexcept>

namespace chistar {

namespace {

// ------------------------------------------------------------ arithmetic mod p

using u64 = std::uint64_t;
using Fp = std::vector<u64>;  // low to high, trimmed

// Primes stay far below 2^32, so products fit in 64 bits.
u64 mulmod(u64 a, u64 b, u64 p) { return (a * b) % p; }

u64 powmod(u64 a, u64 e, u64 p) {
  u64 r = 1 % p;
  a %= p;
  while (e) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

u64 invmod(u64 a, u64 p) { return powmod(a, p - 2, p); }

void trim(Fp& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

int deg(const Fp& f) { return static_cast<int>(f.size()) - 1; }

Fp sub(const Fp& a, const Fp& b, u64 p) {
  Fp out(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] = (out[i] + p - b[i]) % p;
  trim(out);
  return out;
}

Fp mul(const Fp& a, const Fp& b, u64 p) {
  if (a.empty() || b.empty()) return {};
  Fp out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t k = 0; k < b.size(); ++k) out[i + k] = (out[i + k] + mulmod(a[i], b[k], p)) % p;
  }
  trim(out);
  return out;
}

std::pair<Fp, Fp> divmod(const Fp& a, const Fp& b, u64 p) {
  if (b.empty()) throw std::domain_error("division by zero polynomial mod p");
  if (deg(a) < deg(b)) return {{}, a};
  Fp rem = a;
  Fp quot(static_cast<std::size_t>(deg(a) - deg(b) + 1), 0);
  const u64 inv = invmod(b.back(), p);
  const int db = deg(b);
  for (int i = deg(a); i >= db; --i) {
    const u64 c = mulmod(rem[static_cast<std::size_t>(i)], inv, p);
    quot[static_cast<std::size_t>(i - db)] = c;
    if (c == 0) continue;
    for (int k = 0; k <= db; ++k) {
      auto& slot = rem[static_cast<std::size_t>(i - db + k)];
      slot = (slot + p - mulmod(c, b[static_cast<std::size_t>(k)], p)) % p;
    }
  }
  rem.resize(static_cast<std::size_t>(db));
  trim(rem);
  trim(quot);
  return {quot, rem};
}

Fp rem(const Fp& a, const Fp& b, u64 p) { return divmod(a, b, p).second; }

Fp monic(const Fp& f, u64 p) {
  if (f.empty()) return f;
  const u64 inv = invmod(f.back(), p);
  Fp out(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) out[i] = mulmod(f[i], inv, p);
  return out;
}

Fp gcd(Fp a, Fp b, u64 p) {
  while (!b.empty()) {
    Fp r = rem(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a, p);
}

// s, t with s a + t b = 1 for coprime a, b.
std::pair<Fp, Fp> bezout(const Fp& a, const Fp& b, u64 p) {
  Fp r0 = a, r1 = b, s0 = {1}, s1 = {}, t0 = {}, t1 = {1};
  while (!r1.empty()) {
    auto [q, r] = divmod(r0, r1, p);
    Fp s = sub(s0, mul(q, s1, p), p);
    Fp t = sub(t0, mul(q, t1, p), p);
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s);
    t0 = std::move(t1);
    t1 = std::move(t);
  }
  if (deg(r0) != 0) throw std::logic_error("bezout: inputs not coprime mod p");
  const u64 inv = invmod(r0[0], p);
  for (auto& c : s0) c = mulmod(c, inv, p);
  for (auto& c : t0) c = mulmod(c, inv, p);
  return {s0, t0};
}

Fp derivative(const Fp& f, u64 p) {
  if (f.size() <= 1) return {};
  Fp out(f.size() - 1);
  for (std::size_t i = 1; i < f.size(); ++i) out[i - 1] = mulmod(f[i], i % p, p);
  trim(out);
  return out;
}

// base^e mod m with e = p^d or similar, given as an mpz.
Fp powmod_poly(Fp base, const Integer& e, const Fp& m, u64 p) {
  Fp result = {1};
  base = rem(base, m, p);
  const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    result = rem(mul(result, result, p), m, p);
    if (mpz_tstbit(e.get_mpz_t(), i)) result = rem(mul(result, base, p), m, p);
  }
  return result;
}

// (factor, degree of each irreducible piece) from distinct-degree factorization.
std::vector<std::pair<Fp, int>> distinct_degree(Fp f, u64 p) {
  std::vector<std::pair<Fp, int>> out;
  const Fp x = {0, 1};
  Fp h = x;
  for (int d = 1; 2 * d <= deg(f); ++d) {
    h = powmod_poly(h, Integer(p), f, p);
    Fp g = gcd(sub(h, x, p), f, p);
    if (deg(g) > 0) {
      out.emplace_back(g, d);
      f = divmod(f, g, p).first;
      h = rem(h, f, p);
    }
  }
  if (deg(f) > 0) out.emplace_back(monic(f, p), deg(f));
  return out;
}

void equal_degree(const Fp& g, int d, u64 p, std::mt19937_64& rng, std::vector<Fp>& out) {
  if (deg(g) == d) {
    out.push_back(g);
    return;
  }
  Integer e;
  mpz_ui_pow_ui(e.get_mpz_t(), p, static_cast<unsigned long>(d));
  e = (e - 1) / 2;
  std::uniform_int_distribution<u64> coef(0, p - 1);
  for (;;) {
    Fp a(static_cast<std::size_t>(deg(g)));
    for (auto& c : a) c = coef(rng);
    trim(a);
    if (deg(a) < 1) continue;
    Fp b = sub(powmod_poly(a, e, g, p), {1}, p);
    Fp h = gcd(b, g, p);
    if (deg(h) > 0 && deg(h) < deg(g)) {
      equal_degree(h, d, p, rng, out);
      equal_degree(divmod(g, h, p).first, d, p, rng, out);
      return;
    }
  }
}

// --------------------------------------------------------------- integer polys

using ZPoly = std::vector<Integer>;

Integer mod_pos(const Integer& x, const Integer& m) {
  Integer r;
  mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
  return r;
}

Integer mod_sym(const Integer& x, const Integer& m) {
  Integer r = mod_pos(x, m);
  if (2 * r > m) r -= m;
  return r;
}

Fp reduce(const ZPoly& f, u64 p) {
  Fp out(f.size());
  const Integer pz(static_cast<unsigned long>(p));
  for (std::size_t i = 0; i < f.size(); ++i) out[i] = mod_pos(f[i], pz).get_ui();
  trim(out);
  return out;
}

ZPoly lift(const Fp& f) {
  ZPoly out(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) out[i] = Integer(static_cast<unsigned long>(f[i]));
  return out;
}

ZPoly zmul(const ZPoly& a, const ZPoly& b, const Integer& m) {
  if (a.empty() || b.empty()) return {};
  ZPoly out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < b.size(); ++k) out[i + k] += a[i] * b[k];
  for (auto& c : out) c = mod_pos(c, m);
  return out;
}

ZPoly to_zpoly(const QPoly& f) {
  ZPoly out;
  for (const auto& c : f.coeffs()) {
    if (c.get_den() != 1) throw std::logic_error("to_zpoly: non-integral coefficient");
    out.push_back(c.get_num());
  }
  return out;
}

QPoly to_qpoly(const ZPoly& f) {
  std::vector<Rational> c;
  c.reserve(f.size());
  for (const auto& v : f) c.emplace_back(v);
  return QPoly(std::move(c));
}

// Lifts F = A0 B0 (mod p) with F monic mod m to F = A B (mod m = p^k).
std::pair<ZPoly, ZPoly> hensel_pair(const ZPoly& F, const Fp& A0, const Fp& B0, u64 p, const Integer& m) {
  const auto [s, t] = bezout(A0, B0, p);
  (void)s;
  ZPoly A = lift(A0), B = lift(B0);
  const Integer pz(static_cast<unsigned long>(p));
  Integer pj = pz;
  while (pj < m) {
    ZPoly ab = zmul(A, B, pj * pz * pz);
    ZPoly e(F.size(), 0);
    for (std::size_t i = 0; i < F.size(); ++i) {
      Integer diff = F[i] - (i < ab.size() ? ab[i] : Integer(0));
      e[i] = mod_pos(diff, pj * pz);
      if (mod_pos(e[i], pj) != 0) throw std::logic_error("hensel: lifting invariant broken");
      e[i] /= pj;
    }
    const Fp ep = reduce(e, p);
    const Fp dA = rem(mul(t, ep, p), A0, p);
    const auto [dB, r] = divmod(sub(ep, mul(dA, B0, p), p), A0, p);
    if (!r.empty()) throw std::logic_error("hensel: inexact correction");
    for (std::size_t i = 0; i < dA.size(); ++i) A[i] += pj * Integer(static_cast<unsigned long>(dA[i]));
    for (std::size_t i = 0; i < dB.size(); ++i) B[i] += pj * Integer(static_cast<unsigned long>(dB[i]));
    pj *= pz;
  }
  for (auto& c : A) c = mod_pos(c, m);
  for (auto& c : B) c = mod_pos(c, m);
  return {A, B};
}

bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// Factors of a primitive squarefree integer polynomial of degree >= 2.
std::vector<QPoly> zassenhaus(const QPoly& f_in, bool stop_if_reducible) {
  const ZPoly f = to_zpoly(f_in);
  const int n = static_cast<int>(f.size()) - 1;
  const Integer lc = f.back();

  // Pick the prime with the fewest modular factors among the first good ones.
  u64 best_p = 0;
  std::size_t best_count = SIZE_MAX;
  int good = 0;
  for (u64 p = 1009; good < 20; p += 2) {
    if (!is_prime(p)) continue;
    if (mpz_divisible_ui_p(lc.get_mpz_t(), p)) continue;
    const Fp fp = reduce(f, p);
    if (deg(gcd(fp, derivative(fp, p), p)) > 0) continue;
    ++good;
    std::size_t count = 0;
    for (const auto& [g, d] : distinct_degree(monic(fp, p), p)) count += static_cast<std::size_t>(deg(g) / d);
    if (count < best_count) {
      best_count = count;
      best_p = p;
    }
    if (count == 1) return {f_in};
  }
  const u64 p = best_p;

  std::mt19937_64 rng(0x9e3779b97f4a7c15ULL);
  std::vector<Fp> modular;
  const Fp fp = monic(reduce(f, p), p);
  for (const auto& [g, d] : distinct_degree(fp, p)) equal_degree(g, d, p, rng, modular);
  std::sort(modular.begin(), modular.end());

  // Bound on coefficients of lc * (factor / lc(factor)).
  Integer norm2 = 0;
  for (const auto& c : f) norm2 += c * c;
  Integer norm = sqrt(norm2) + 1;
  Integer bound = 2 * abs(lc) * norm;
  mpz_mul_2exp(bound.get_mpz_t(), bound.get_mpz_t(), static_cast<mp_bitcnt_t>(n));
  const Integer pz(static_cast<unsigned long>(p));
  Integer m = pz;
  while (m <= bound) m *= pz;

  // Monic F = lc^{-1} f mod m, lifted factor by factor.
  Integer lc_inv;
  mpz_invert(lc_inv.get_mpz_t(), lc.get_mpz_t(), m.get_mpz_t());
  ZPoly G(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) G[i] = mod_pos(f[i] * lc_inv, m);
  std::vector<ZPoly> lifted;
  for (std::size_t i = 0; i + 1 < modular.size(); ++i) {
    Fp rest = {1};
    for (std::size_t l = i + 1; l < modular.size(); ++l) rest = mul(rest, modular[l], p);
    auto [A, B] = hensel_pair(G, modular[i], rest, p, m);
    lifted.push_back(std::move(A));
    G = std::move(B);
  }
  lifted.push_back(std::move(G));

  // Recombination over subsets of increasing size.
  std::vector<QPoly> found;
  QPoly remaining = f_in;
  std::vector<ZPoly> pool = lifted;
  for (std::size_t size = 1; 2 * size <= pool.size(); ++size) {
    bool restart = true;
    while (restart) {
      restart = false;
      const Integer cur_lc = remaining.leading().get_num();
      std::vector<std::size_t> idx(size);
      for (std::size_t i = 0; i < size; ++i) idx[i] = i;
      while (true) {
        ZPoly g = {mod_pos(cur_lc, m)};
        for (auto i : idx) g = zmul(g, pool[i], m);
        for (auto& c : g) c = mod_sym(c, m);
        const QPoly candidate = primitive_part(to_qpoly(g));
        auto [q, r] = QPoly::divmod(remaining, candidate);
        if (r.is_zero()) {
          if (stop_if_reducible) return {candidate, q};
          found.push_back(candidate);
          remaining = primitive_part(q);
          std::vector<ZPoly> next;
          for (std::size_t i = 0, k = 0; i < pool.size(); ++i) {
            if (k < idx.size() && idx[k] == i) {
              ++k;
              continue;
            }
            next.push_back(pool[i]);
          }
          pool = std::move(next);
          restart = 2 * size <= pool.size();
          break;
        }
        // Next combination in lexicographic order.
        std::size_t pos = size;
        while (pos > 0 && idx[pos - 1] == pool.size() - size + pos - 1) --pos;
        if (pos == 0) break;
        ++idx[pos - 1];
        for (std::size_t i = pos; i < size; ++i) idx[i] = idx[i - 1] + 1;
      }
    }
  }
  found.push_back(remaining);
  return found;
}

// Yun's squarefree decomposition: f = c prod a_i^i.
std::vector<std::pair<QPoly, int>> squarefree(const QPoly& f) {
  std::vector<std::pair<QPoly, int>> out;
  QPoly a = f.monic();
  QPoly b = a.derivative();
  QPoly c = QPoly::gcd(a, b);
  QPoly w = a / c;
  QPoly y = b / c;
  int i = 1;
  while (w.degree() > 0) {
    QPoly z = y - w.derivative();
    QPoly g = QPoly::gcd(w, z);
    if (g.degree() > 0) out.emplace_back(g, i);
    w = w / g;
    y = z / g;
    ++i;
  }
  return out;
}

bool factor_less(const PolyFactor& a, const PolyFactor& b) {
  if (a.factor.degree() != b.factor.degree()) return a.factor.degree() < b.factor.degree();
  const auto& x = a.factor.coeffs();
  const auto& y = b.factor.coeffs();
  for (std::size_t i = x.size(); i-- > 0;) {
    if (x[i] != y[i]) return x[i] < y[i];
  }
  return a.multiplicity < b.multiplicity;
}

}  // namespace

QPoly primitive_part(const QPoly& f) {
  if (f.is_zero()) return f;
  const Integer den = f.common_denominator();
  ZPoly z;
  for (const auto& c : f.coeffs()) z.push_back(c.get_num() * (den / c.get_den()));
  Integer g = 0;
  for (const auto& c : z) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  if (z.back() < 0) g = -g;
  for (auto& c : z) c /= g;
  return to_qpoly(z);
}

std::vector<PolyFactor> factor_over_q(const QPoly& f) {
  if (f.is_zero()) throw std::domain_error("factor_over_q: zero polynomial");
  std::vector<PolyFactor> out;
  if (f.degree() == 0) return out;
  for (const auto& [part, mult] : squarefree(f)) {
    const QPoly prim = primitive_part(part);
    if (prim.degree() == 1) {
      out.push_back({prim, mult});
      continue;
    }
    for (auto& g : zassenhaus(prim, false)) out.push_back({primitive_part(g), mult});
  }
  std::sort(out.begin(), out.end(), factor_less);
  return out;
}

bool is_irreducible_over_q(const QPoly& f) {
  if (f.degree() < 1) return false;
  if (f.degree() == 1) return true;
  const QPoly g = QPoly::gcd(f, f.derivative());
  if (g.degree() > 0) return false;
  return zassenhaus(primitive_part(f), true).size() == 1;
}

}  // namespace chistar
