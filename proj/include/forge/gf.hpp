#pragma once

#include <vector>

#include "forge/errors.hpp"

namespace forge {

// GF(p^e) for small prime powers. Elements are encoded 0..q-1: the base-p
// digits of an element are the coefficients of its polynomial representative
// (digit i = coefficient of x^i), so for GF(4) the element x is encoded 2.
// The modulus is the lexicographically least monic irreducible polynomial of
// degree e over GF(p).
class FiniteField {
 public:
  // gf_build. Throws NotPrimePower when q is not a prime power.
  static FiniteField build(int q);

  int q() const { return q_; }
  int characteristic() const { return p_; }
  int degree() const { return e_; }

  // Coefficients c[0..e], low degree first, c[e] == 1.
  const std::vector<int>& modulus() const { return modulus_; }

  int add(int a, int b) const;
  int sub(int a, int b) const;
  int neg(int a) const;
  int mul(int a, int b) const;
  int inv(int a) const;  // a != 0
  int pow(int a, long long e) const;

 private:
  FiniteField(int p, int e);

  int p_ = 0, e_ = 0, q_ = 0;
  std::vector<int> modulus_;
};

// True when q = p^e for a prime p and e >= 1; the factorization if so.
bool is_prime_power(int q, int* p_out = nullptr, int* e_out = nullptr);

}  // namespace forge
