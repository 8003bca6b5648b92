#pragma once

#include <compare>
#include <cstdint>

namespace sgc {

// An element of a prime field. The modulus lives in the PrimeField that
// produced it; elements never carry it.
class FieldElem {
 public:
  constexpr FieldElem() = default;
  constexpr explicit FieldElem(std::uint64_t value) : value_(value) {}

  constexpr std::uint64_t value() const { return value_; }
  constexpr bool is_zero() const { return value_ == 0; }

  friend constexpr auto operator<=>(FieldElem, FieldElem) = default;

 private:
  std::uint64_t value_ = 0;
};

// Arithmetic context for GF(p), p prime and below 2^63.
class PrimeField {
 public:
  // Throws NotPrime unless p is prime.
  explicit PrimeField(std::uint64_t p);

  std::uint64_t modulus() const { return p_; }

  // Reduces any integer (negative values included) into the field.
  FieldElem elem(std::int64_t v) const;

  FieldElem zero() const { return FieldElem{0}; }
  FieldElem one() const { return FieldElem{1}; }

  FieldElem add(FieldElem a, FieldElem b) const;
  FieldElem sub(FieldElem a, FieldElem b) const;
  FieldElem neg(FieldElem a) const;
  FieldElem mul(FieldElem a, FieldElem b) const;
  FieldElem pow(FieldElem a, std::uint64_t e) const;
  // Throws DivisionByZero for a = 0.
  FieldElem inv(FieldElem a) const;
  FieldElem div(FieldElem a, FieldElem b) const { return mul(a, inv(b)); }

  bool contains(FieldElem a) const { return a.value() < p_; }

  friend bool operator==(const PrimeField&, const PrimeField&) = default;

 private:
  std::uint64_t p_;
};

// Deterministic for every 64-bit input.
bool is_prime(std::uint64_t n);

// Smallest prime >= n (n >= 2).
std::uint64_t least_prime_at_least(std::uint64_t n);

}  // namespace sgc
