#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "excoll/linalg.hpp"

namespace excoll {

/// Finite subgroup of GL_{n+1} over a cyclotomic field.
///
/// Elements are kept in a canonical order (element order, then canonical
/// entry string), so the identity is always element 0. Conjugacy classes are
/// ordered by (element order, trace string, smallest member string) and the
/// identity class is class 0.
class FiniteMatrixGroup {
 public:
  std::size_t dimension() const { return dimension_; }
  long conductor() const { return conductor_; }
  std::size_t order() const { return elements_.size(); }

  const std::vector<CycMatrix>& elements() const { return elements_; }
  const CycMatrix& element(std::size_t i) const { return elements_[i]; }
  const std::vector<CycMatrix>& generators() const { return generators_; }
  std::size_t generator_element(std::size_t g) const { return generator_elements_[g]; }

  const std::vector<std::vector<std::size_t>>& classes() const { return classes_; }
  std::size_t num_classes() const { return classes_.size(); }
  std::size_t class_of(std::size_t element) const { return class_of_[element]; }
  std::size_t class_size(std::size_t cls) const { return classes_[cls].size(); }
  std::size_t class_representative(std::size_t cls) const { return classes_[cls].front(); }

  std::size_t multiply(std::size_t a, std::size_t b) const { return mult_[a * order() + b]; }
  std::size_t inverse(std::size_t a) const { return inverse_[a]; }
  std::size_t power(std::size_t a, long k) const;
  /// Class of g^k for g in class cls.
  std::size_t power_class(std::size_t cls, long k) const;
  long element_order(std::size_t a) const { return element_order_[a]; }

  std::optional<std::size_t> index_of(const CycMatrix& m) const;

  /// Breadth-first spanning tree over right multiplication by generators:
  /// element(i) = element(parent) * generator(gen). The identity has no parent.
  struct TreeEdge {
    std::size_t parent;
    std::size_t generator;
  };
  const std::vector<std::optional<TreeEdge>>& spanning_tree() const { return tree_; }

  friend FiniteMatrixGroup generate_group(const std::vector<CycMatrix>& generators,
                                          std::size_t dimension, long order_cap);

 private:
  std::size_t dimension_ = 1;
  long conductor_ = 1;
  std::vector<CycMatrix> generators_;
  std::vector<std::size_t> generator_elements_;
  std::vector<CycMatrix> elements_;
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<std::size_t> mult_;
  std::vector<std::size_t> inverse_;
  std::vector<long> element_order_;
  std::vector<std::vector<std::size_t>> classes_;
  std::vector<std::size_t> class_of_;
  std::vector<std::optional<TreeEdge>> tree_;
};

/// Closure of the generators. dimension is only consulted when the list is
/// empty (trivial group); order_cap <= 0 selects the configured default.
FiniteMatrixGroup generate_group(const std::vector<CycMatrix>& generators,
                                 std::size_t dimension = 0, long order_cap = 0);

/// An irreducible matrix representation, one matrix per group element.
struct Irrep {
  std::size_t index = 0;
  std::size_t dim = 1;
  std::string name;
  std::vector<CycMatrix> matrices;
};

/// Extend images of the group generators to every element along the
/// spanning tree. The result is a homomorphism only if the images satisfy
/// the group relations; verify_irreps checks this.
std::vector<CycMatrix> extend_to_elements(const FiniteMatrixGroup& group,
                                          const std::vector<CycMatrix>& generator_images);

struct CyclicDiagonal {
  long m = 1;
  std::vector<long> weights;
};

struct BinaryDihedral {
  long l = 1;
};

using BuiltinKind = std::variant<CyclicDiagonal, BinaryDihedral>;

struct GroupWithIrreps {
  FiniteMatrixGroup group;
  std::vector<Irrep> irreps;
  std::string description;
};

/// cyclic_diagonal(m, w): <diag(z_m^{w_1}, ...)> with rho_j(g^k) = z_m^{jk}.
///
/// binary_dihedral(l): order 4l, generated by diag(z_{2l}, z_{2l}^{-1}) and
/// [[0,1],[-1,0]]. Irreps are labelled so that rho_0 is trivial, rho_1 is the
/// other character trivial on the cyclic part, rho_2..rho_l are the
/// two-dimensional ones (rho_2 being the defining representation) and the
/// last two are the characters sending the cyclic generator to -1.
GroupWithIrreps builtin_group(const BuiltinKind& kind);

struct CentralSubgroupInfo {
  long d = 1;
  long e = 1;
  CycNum generator{1};                  // zeta with zeta * Id generating T_d
  std::size_t generator_element = 0;    // index of zeta * Id in the group
  std::vector<std::size_t> elements;    // all of T_d, identity first
};

/// T_d = { zeta * Id in G : zeta^d = 1 }.
CentralSubgroupInfo central_scalar_subgroup(const FiniteMatrixGroup& group, long d);

}  // namespace excoll
