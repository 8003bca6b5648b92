#include "sgc/gf.hpp"

#include <array>
#include <string>

#include "sgc/error.hpp"

namespace sgc {
namespace {

using u128 = unsigned __int128;

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t e, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  while (e > 0) {
    if (e & 1) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    e >>= 1;
  }
  return result;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  constexpr std::array<std::uint64_t, 12> kBases{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (auto b : kBases) {
    if (n % b == 0) return n == b;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // These bases make Miller-Rabin exact below 3.3e24.
  for (auto a : kBases) {
    std::uint64_t x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::uint64_t least_prime_at_least(std::uint64_t n) {
  if (n <= 2) return 2;
  while (!is_prime(n)) ++n;
  return n;
}

PrimeField::PrimeField(std::uint64_t p) : p_(p) {
  if (p >= (std::uint64_t{1} << 63) || !is_prime(p)) {
    throw NotPrime("modulus " + std::to_string(p) + " is not a supported prime");
  }
}

FieldElem PrimeField::elem(std::int64_t v) const {
  const auto m = static_cast<std::int64_t>(p_);
  std::int64_t r = v % m;
  if (r < 0) r += m;
  return FieldElem{static_cast<std::uint64_t>(r)};
}

FieldElem PrimeField::add(FieldElem a, FieldElem b) const {
  std::uint64_t s = a.value() + b.value();
  if (s >= p_) s -= p_;
  return FieldElem{s};
}

FieldElem PrimeField::sub(FieldElem a, FieldElem b) const {
  return a.value() >= b.value() ? FieldElem{a.value() - b.value()}
                                : FieldElem{a.value() + (p_ - b.value())};
}

FieldElem PrimeField::neg(FieldElem a) const {
  return a.is_zero() ? a : FieldElem{p_ - a.value()};
}

FieldElem PrimeField::mul(FieldElem a, FieldElem b) const {
  return FieldElem{mul_mod(a.value(), b.value(), p_)};
}

FieldElem PrimeField::pow(FieldElem a, std::uint64_t e) const {
  return FieldElem{pow_mod(a.value(), e, p_)};
}

FieldElem PrimeField::inv(FieldElem a) const {
  if (a.is_zero()) throw DivisionByZero("inverse of zero in GF(" + std::to_string(p_) + ")");
  // Fermat: a^(p-2) = a^-1.
  return pow(a, p_ - 2);
}

}  // namespace sgc
