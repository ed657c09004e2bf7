#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "covmap/irreps.hpp"
#include "covmap/linalg.hpp"

namespace covmap {

// mat[(k*d+l),(i*d+j)] = φ_{kl,ij}, i.e. Φ(E_ij) = Σ φ_{kl,ij} E_kl and vec(Φ(X)) = mat·vec(X).
struct LinearMapOnMatrices {
  int dim = 0;
  CMatrix mat;

  static LinearMapOnMatrices identity(int d);
  CMatrix apply(const CMatrix& x) const;
};

struct IsotypicProjector {
  std::string label;
  int d_alpha = 0;
  int multiplicity = 0;
  LinearMapOnMatrices superop;
};

struct CovariantMap {
  std::string group;
  std::string irrep;
  std::vector<std::string> theta;
  std::vector<cplx> l;

  bool is_real(double tol = 0.0) const;
  std::vector<double> real_params() const;
};

// J = Σ E_ij ⊗ Φ(E_ij), first factor the E_ij slot.
struct ChoiMatrix {
  int dim = 0;
  CMatrix matrix;
};

int multiplicity(const std::string& alpha, const UnitaryRep& u, const CharacterTable& table);
IsotypicProjector projector(const std::string& alpha, const UnitaryRep& u, const CharacterTable& table);

// Complete projector family {Π^α : α ∈ Θ} for one (G, U) pair.
class ProjectorFamily {
 public:
  // Θ is every label with m_α >= 1, in `order` if given, else in table order.
  static ProjectorFamily from_characters(const UnitaryRep& u, const CharacterTable& table,
                                         const std::vector<std::string>& order = {});
  // Isotypic sectors of the adjoint action of MU(d,n), n >= 3: scalars, traceless diagonal
  // and off-diagonal matrices.  Θ = (id, alpha, beta) with alpha the off-diagonal sector.
  static ProjectorFamily monomial(int d, int n = 3);

  int dim() const noexcept { return dim_; }
  const std::string& group_name() const noexcept { return group_name_; }
  const std::string& irrep_label() const noexcept { return irrep_label_; }
  const std::vector<IsotypicProjector>& projectors() const noexcept { return projectors_; }
  std::vector<std::string> theta() const;
  const IsotypicProjector& at(const std::string& label) const;

  const std::optional<UnitaryRep>& rep() const noexcept { return rep_; }
  const std::optional<CharacterTable>& table() const noexcept { return table_; }

  CovariantMap make_map(const std::vector<cplx>& l) const;
  CovariantMap make_map(const std::vector<double>& l) const;

 private:
  int dim_ = 0;
  std::string group_name_;
  std::string irrep_label_;
  std::vector<IsotypicProjector> projectors_;
  std::optional<UnitaryRep> rep_;
  std::optional<CharacterTable> table_;
};

// Families used throughout: "s3", "s4", "q", "mu" (d >= 3).
ProjectorFamily family_for(const std::string& group, int d = 3);

LinearMapOnMatrices assemble(const CovariantMap& cm, const ProjectorFamily& family);
ChoiMatrix choi(const LinearMapOnMatrices& map);
LinearMapOnMatrices map_from_choi(const ChoiMatrix& j);
LinearMapOnMatrices compose_with_transpose(const LinearMapOnMatrices& map);
LinearMapOnMatrices compose(const LinearMapOnMatrices& outer, const LinearMapOnMatrices& inner);
LinearMapOnMatrices transposition_map(int d);

struct CovarianceCheck {
  bool covariant = false;
  double max_violation = 0;
};
CovarianceCheck check_covariance(const LinearMapOnMatrices& map, const UnitaryRep& u, double tol = 1e-10);
CovarianceCheck check_covariance(const LinearMapOnMatrices& map, const std::vector<CMatrix>& unitaries,
                                 double tol = 1e-10);

std::vector<std::pair<std::string, CMatrix>> decompose_matrix(const CMatrix& x, const ProjectorFamily& family);

}  // namespace covmap
