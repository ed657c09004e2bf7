#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "covmap/groups.hpp"
#include "covmap/linalg.hpp"

namespace covmap {

struct UnitaryRep {
  GroupPtr group;
  std::string label;
  int dim = 0;
  std::vector<CMatrix> matrices;  // indexed by element

  const CMatrix& operator()(std::size_t g) const { return matrices.at(g); }
  std::vector<cplx> character() const;
};

struct CharacterTable {
  GroupPtr group;
  std::vector<std::string> labels;
  std::vector<int> dims;
  std::vector<std::vector<cplx>> values;  // [irrep][class]

  std::size_t index_of(std::string_view label) const;
  bool contains(std::string_view label) const;
  cplx value(std::size_t irrep, std::size_t element) const {
    return values.at(irrep).at(group->class_of(element));
  }
  std::vector<cplx> per_element(std::size_t irrep) const;
};

// u_kl = ε^{kl}/√n, ε = exp(2πi/n)
CMatrix dft_matrix(int n);
// M(σ) = (δ_{iσ(j)})
CMatrix permutation_matrix(const std::vector<int>& perm);
// ψ_ij(σ) = (1/n) Σ_l ε^{jl − σ(l)i}, i,j = 1..n−1
CMatrix standard_irrep_matrix(const std::vector<int>& perm);
// Closed form for the transposition (ab), 0 <= a < b <= n−1.
CMatrix transposition_matrix(int n, int a, int b);

UnitaryRep standard_irrep_sym(const GroupPtr& sn);
UnitaryRep standard_irrep_sym(int n);
UnitaryRep quaternion_irrep_2d(const GroupPtr& q);
std::vector<UnitaryRep> one_dim_irreps(const GroupPtr& group);
// Permutation matrices for S(n), the monomial matrices themselves for MU(d,n).
UnitaryRep defining_rep(const GroupPtr& group);

CharacterTable character_table(const GroupPtr& group);

double irreducibility_norm(const std::vector<cplx>& chi, const FiniteGroup& group);

struct RepReport {
  double homomorphism_error = 0;  // max entrywise |ρ(gh) − ρ(g)ρ(h)|
  double unitarity_error = 0;
  double identity_error = 0;
  double class_function_error = 0;  // character spread within classes
  double irreducibility = 0;
  bool exhaustive = true;
  bool passed(double tol = 1e-10) const {
    return homomorphism_error <= tol && unitarity_error <= tol && identity_error == 0.0 &&
           class_function_error <= tol;
  }
};
// Exhaustive over all pairs when `exhaustive`, otherwise over element × generator products,
// which is enough for a homomorphism by induction on word length.
RepReport verify_rep(const UnitaryRep& rep, bool exhaustive = true);

// Named irreps used by the CLI: "standard"/"lambda1"/"lambda" for S(n), "t4" for Q,
// "defining" for MU(d,n), plus the one-dimensional labels.
UnitaryRep rep_by_name(const GroupPtr& group, std::string_view name);

// Irrep label of the 2-dim quaternion rep and the 3-dim S(4) labels.
inline constexpr const char* kQuatIrrep = "t4";

}  // namespace covmap
