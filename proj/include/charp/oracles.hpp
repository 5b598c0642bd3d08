#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <vector>

#include "charp/ideal.hpp"
#include "charp/poly.hpp"

// Slow reference routes that share no code with the fast kernels they check.
namespace charp::oracle {

using BigInt = boost::multiprecision::cpp_int;

/// Row n of Pascal's triangle in exact integers.
std::vector<BigInt> pascal_row(std::uint64_t n);

/// Every monomial in n variables of total degree <= d.
std::vector<Monomial> monomials_up_to(std::size_t n, std::uint64_t d);

/// x^K in I^K for some 1 <= K <= bound.
bool bounded_power_member(const Monomial& x, const MonomialIdeal& I, unsigned bound);

/// Monomials of the bounded-power closure inside the box [0, max generator exponent]^n,
/// reduced to minimal generators.
MonomialIdeal bounded_power_closure(const MonomialIdeal& I, unsigned bound);

/// g lies in the F_p-span of the products m * h, h in gens, of total degree <= deg(g) + slack.
/// Sound for membership; a negative answer is only as strong as the degree bound.
bool span_member(const Polynomial& g, const std::vector<Polynomial>& gens, std::uint64_t slack);

}  // namespace charp::oracle
