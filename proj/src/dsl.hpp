#ifndef VFL_DSL_HPP
#define VFL_DSL_HPP

#include <string>
#include <string_view>
#include <vector>

#include "vector_field.hpp"

namespace vfl {

// Text syntax for fields and coefficient functions:
//
//   expr    := term (("+"|"-") term)*
//   term    := factor ("*" factor)*
//   factor  := rational | "i" | var | var "^" nat | "exp" "(" linform ")"
//            | "D" var | "(" expr ")"
//   linform := (coef "*")? var (("+"|"-") (coef "*")? var)*
//
// Variables are x1..xN; x, y, z are accepted (and printed) when N <= 3.
// A leading "-" is accepted on expr and linform.

std::string variable_name(std::size_t axis, std::size_t dim);

VectorField parse_field(std::string_view text, std::size_t dim, std::size_t line = 1);
CoeffFn parse_function(std::string_view text, std::size_t dim, std::size_t line = 1);

std::string print_field(const VectorField& v);
std::string print_function(const CoeffFn& f);
std::string print_point(const Point& p);

// One field per non-blank line; '#' starts a comment.
std::vector<VectorField> parse_field_lines(std::string_view text, std::size_t dim);

}  // namespace vfl

#endif
