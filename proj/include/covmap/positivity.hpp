#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "covmap/covmaps.hpp"

namespace covmap {

struct PsdResult {
  bool holds = false;
  double min_eigenvalue = 0;
};

// λ_min(J) >= −tol·max(1, ‖J‖_op); throws ValidationError when J is not hermitian to tol_herm.
PsdResult is_cp(const ChoiMatrix& j, double tol = 1e-9, double tol_herm = 1e-10);
PsdResult is_cop(const LinearMapOnMatrices& map, double tol = 1e-9, double tol_herm = 1e-10);

struct InequalityValue {
  std::string label;  // irrep β
  int index = 0;      // i within the β sector
  double value = 0;
};
// Σ_g (Σ_α l_α d_α χ^α(g^{-1})) |tr(V_i^β U(g)†)|² for every (β, i).  Requires a character-table family.
std::vector<InequalityValue> cp_inequalities(const ProjectorFamily& family, const std::vector<double>& l);

// |l_α| <= l_id for α ≠ id; l[0] is l_id.
bool cuboid_necessary(const std::vector<double>& l);

struct DiagonalCheck {
  bool holds = false;
  double min_entry = 0;
};
DiagonalCheck diagonal_necessary(const LinearMapOnMatrices& map, double tol = 1e-10);

struct ProductVectorPair {
  CVector x;
  CVector y;
};
double block_value(const ChoiMatrix& j, const ProductVectorPair& pair);

struct BlockSearchOptions {
  int restarts = 64;
  int iters = 200;
  std::uint64_t seed = 0;
};
struct BlockSearchResult {
  double min_value = 0;
  ProductVectorPair best;
  int restarts = 0;
  int iters = 0;
  std::uint64_t seed = 0;
};
// Alternating minimisation of ⟨x⊗y|J|x⊗y⟩ over unit vectors.  Evidence only, never a certificate.
BlockSearchResult block_positivity_search(const ChoiMatrix& j, const BlockSearchOptions& opts);

// X ↦ tr(X)/(d−1)·1 − X
CMatrix inverse_reduction(const CMatrix& x);
// W̃ = l_id/(d(d−1))·1⊗1 − J/d
ChoiMatrix reduction_witness(double l_id, const ChoiMatrix& j);
ChoiMatrix reduction_witness(const CovariantMap& cm, const ProjectorFamily& family);

struct ReductionResult {
  bool sufficient = false;
  std::vector<double> values;  // l_id/(d−1) − ε_i over the plain spectrum of J, ascending in ε
};
ReductionResult reduction_sufficient(double l_id, const ChoiMatrix& j, double tol = 1e-9);

// tr(ρ J); ρ must be a density matrix.
double witness_value(const ChoiMatrix& j, const CMatrix& state, double tol = 1e-10);

using ExactPredicate = std::function<bool(const std::vector<double>& l)>;

struct ClassifyOptions {
  double tol_psd = 1e-9;
  double tol_eq = 1e-10;
  double tol_search = 1e-8;
  BlockSearchOptions search;
  bool run_search = true;
};

struct ClassificationReport {
  CovariantMap map;
  PsdResult cp;
  PsdResult cop;
  bool cuboid_necessary = false;
  DiagonalCheck diagonal;
  ReductionResult reduction;
  std::optional<bool> exact_positive;
  std::optional<BlockSearchResult> sampled;  // absent when the search was skipped
  bool witness_flag = false;
  bool degenerate = false;  // l_id <= 0 with a nonzero map
  std::string verdict;
};

ClassificationReport classify(const ProjectorFamily& family, const CovariantMap& cm, const ClassifyOptions& opts,
                              const ExactPredicate* exact = nullptr);

}  // namespace covmap
