#ifndef VFL_TYPES_HPP
#define VFL_TYPES_HPP

#include <compare>
#include <string>
#include <string_view>
#include <vector>

#include "linalg.hpp"

namespace vfl {

struct SimpleType {
  char family;  // 'A'..'G'
  unsigned rank;
  friend auto operator<=>(const SimpleType&, const SimpleType&) = default;
  std::string str() const;
};

// A direct product of simple types, factors sorted by (family, rank).
struct TypeLabel {
  std::vector<SimpleType> factors;

  static TypeLabel parse(std::string_view text);  // "A1xA2"; throws UnsupportedType
  std::string str() const;
  unsigned rank() const;
  friend bool operator==(const TypeLabel&, const TypeLabel&) = default;
};

bool is_legal(const SimpleType& t);

// Gram matrix (alpha_i, alpha_j) of the simple roots in Bourbaki numbering,
// scaled so the short roots of each factor have squared length 2.
Matrix gram_matrix(const TypeLabel& t);
// A_ij = <alpha_i, alpha_j^vee> = 2 (alpha_i, alpha_j) / (alpha_j, alpha_j).
Matrix cartan_matrix_from_gram(const Matrix& g);

// Classifies a Cartan matrix. Returns the label plus, for each canonical
// simple root (factors in label order, Bourbaki numbering inside each), the
// index of the matching row of `a`. Throws UnrecognizedDiagram.
struct Classification {
  TypeLabel label;
  std::vector<std::size_t> order;
};
Classification classify_cartan_matrix(const Matrix& a);

// Positive roots as simple-root coefficient vectors, sorted by height and
// then by descending coefficient vector (simple roots come out in index
// order). Enumerated by root strings from the Cartan matrix.
using RootCoeffs = std::vector<int>;
std::vector<RootCoeffs> positive_roots(const Matrix& cartan);

struct RankDim {
  unsigned rank;
  unsigned dim;
};
RankDim rank_dim_table(const TypeLabel& t);

// Every product of simple types of total rank <= r, sorted by rank then label.
std::vector<TypeLabel> enumerate_types_up_to_rank(unsigned r);

}  // namespace vfl

#endif
