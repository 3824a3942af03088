#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace vetokit {

using Rational = mpq_class;
using RationalMatrix = std::vector<std::vector<Rational>>;

/// Canonical "p/q" text, denominator always present ("3/1", "-1/2", "0/1").
std::string to_string(const Rational& q);

/// Accepts "p/q" or a bare integer. Throws std::invalid_argument.
Rational parse_rational(std::string_view text);

RationalMatrix zero_matrix(std::size_t rows, std::size_t cols);

}  // namespace vetokit
