#include "forge/gf.hpp"

#include <algorithm>

namespace forge {

namespace {

// Digits <-> encoded element, base p, low digit first.
std::vector<int> to_digits(int value, int p, int e) {
  std::vector<int> digits(e, 0);
  for (int i = 0; i < e && value > 0; ++i) {
    digits[i] = value % p;
    value /= p;
  }
  return digits;
}

int from_digits(const std::vector<int>& digits, int p) {
  int value = 0;
  for (int i = static_cast<int>(digits.size()) - 1; i >= 0; --i)
    value = value * p + digits[i];
  return value;
}

int poly_degree(const std::vector<int>& poly) {
  for (int i = static_cast<int>(poly.size()) - 1; i >= 0; --i)
    if (poly[i] != 0) return i;
  return -1;
}

// poly mod divisor over GF(p); divisor monic.
std::vector<int> poly_mod(std::vector<int> poly, const std::vector<int>& divisor,
                          int p) {
  const int dd = poly_degree(divisor);
  for (int i = poly_degree(poly); i >= dd; --i) {
    int coeff = poly[i];
    if (coeff == 0) continue;
    for (int j = 0; j <= dd; ++j) {
      int& c = poly[i - dd + j];
      c = ((c - coeff * divisor[j]) % p + p) % p;
    }
  }
  poly.resize(std::max(dd, 1));
  return poly;
}

std::vector<int> poly_mul(const std::vector<int>& a, const std::vector<int>& b,
                          int p) {
  std::vector<int> out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      out[i + j] = (out[i + j] + a[i] * b[j]) % p;
  }
  return out;
}

// f has a monic divisor of degree 1..deg(f)/2 iff it is reducible; trial
// division over all candidate divisors is fine at this size.
bool is_irreducible(const std::vector<int>& f, int p) {
  const int df = poly_degree(f);
  for (int dg = 1; dg <= df / 2; ++dg) {
    std::vector<int> g(dg + 1, 0);
    g[dg] = 1;
    // iterate over all p^dg choices of the low coefficients
    long long total = 1;
    for (int i = 0; i < dg; ++i) total *= p;
    for (long long code = 0; code < total; ++code) {
      long long c = code;
      for (int i = 0; i < dg; ++i) {
        g[i] = static_cast<int>(c % p);
        c /= p;
      }
      if (poly_degree(poly_mod(f, g, p)) < 0) return false;  // divisor found
    }
  }
  return true;
}

}  // namespace

bool is_prime_power(int q, int* p_out, int* e_out) {
  if (q < 2) return false;
  int p = q;
  for (int d = 2; d * d <= q; ++d)
    if (q % d == 0) {
      p = d;
      break;
    }
  int e = 0, rest = q;
  while (rest % p == 0) {
    rest /= p;
    ++e;
  }
  if (rest != 1) return false;
  if (p_out) *p_out = p;
  if (e_out) *e_out = e;
  return true;
}

FiniteField::FiniteField(int p, int e) : p_(p), e_(e) {
  q_ = 1;
  for (int i = 0; i < e; ++i) q_ *= p;

  modulus_.assign(e + 1, 0);
  modulus_[e] = 1;
  if (e > 1) {
    // lexicographically least monic irreducible: scan the low coefficients
    // as a base-p number, high digit most significant
    long long total = 1;
    for (int i = 0; i < e; ++i) total *= p;
    bool found = false;
    for (long long code = 0; code < total && !found; ++code) {
      long long c = code;
      for (int i = e - 1; i >= 0; --i) {
        long long digit_base = 1;
        for (int j = 0; j < i; ++j) digit_base *= p;
        modulus_[i] = static_cast<int>((c / digit_base) % p);
      }
      found = is_irreducible(modulus_, p);
    }
    // a monic irreducible of every degree exists over every GF(p)
  }
}

FiniteField FiniteField::build(int q) {
  int p = 0, e = 0;
  require(is_prime_power(q, &p, &e), Errc::NotPrimePower,
          std::to_string(q) + " is not a prime power");
  return FiniteField(p, e);
}

int FiniteField::add(int a, int b) const {
  if (e_ == 1) return (a + b) % p_;
  auto da = to_digits(a, p_, e_), db = to_digits(b, p_, e_);
  for (int i = 0; i < e_; ++i) da[i] = (da[i] + db[i]) % p_;
  return from_digits(da, p_);
}

int FiniteField::neg(int a) const {
  if (e_ == 1) return (p_ - a) % p_;
  auto da = to_digits(a, p_, e_);
  for (int i = 0; i < e_; ++i) da[i] = (p_ - da[i]) % p_;
  return from_digits(da, p_);
}

int FiniteField::sub(int a, int b) const { return add(a, neg(b)); }

int FiniteField::mul(int a, int b) const {
  if (e_ == 1) return (a * b) % p_;
  auto prod = poly_mul(to_digits(a, p_, e_), to_digits(b, p_, e_), p_);
  prod = poly_mod(std::move(prod), modulus_, p_);
  prod.resize(e_, 0);
  return from_digits(prod, p_);
}

int FiniteField::pow(int a, long long e) const {
  int result = 1, base = a;
  while (e > 0) {
    if (e & 1) result = mul(result, base);
    base = mul(base, base);
    e >>= 1;
  }
  return result;
}

int FiniteField::inv(int a) const {
  require(a != 0, Errc::InvalidInput, "zero has no inverse");
  return pow(a, q_ - 2);  // multiplicative group has order q-1
}

}  // namespace forge
