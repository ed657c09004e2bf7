#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace covmap {

enum class GroupFamily { symmetric, quaternion, monomial };

inline constexpr std::size_t kEnumerationBound = 10000;

struct GroupElement {
  std::size_t index;
  std::string label;
};

// Finite group enumerated from exact discrete keys.
//   symmetric: one-line permutation p with p[j] = σ(j)
//   quaternion: {sign, unit} with unit 0..3 for e,i,j,k
//   monomial: d exponents (diagonal phases ω^e) followed by the one-line permutation
class FiniteGroup {
 public:
  using Key = std::vector<int>;
  using Compose = std::function<Key(const Key&, const Key&)>;

  FiniteGroup(std::string name, GroupFamily family, int degree, int root_order, std::vector<Key> keys,
              std::vector<std::string> labels, Compose compose);

  const std::string& name() const noexcept { return name_; }
  GroupFamily family() const noexcept { return family_; }
  // Number of points for S(n), matrix size d for MU(d,n), 2 for Q.
  int degree() const noexcept { return degree_; }
  // n for MU(d,n), 0 otherwise.
  int root_order() const noexcept { return root_order_; }

  std::size_t order() const noexcept { return keys_.size(); }
  std::size_t identity() const noexcept { return identity_; }
  std::size_t multiply(std::size_t a, std::size_t b) const;
  std::size_t inverse(std::size_t g) const { return inverse_.at(g); }

  const Key& key(std::size_t g) const { return keys_.at(g); }
  const std::string& label(std::size_t g) const { return labels_.at(g); }
  GroupElement element(std::size_t g) const { return {g, labels_.at(g)}; }
  std::optional<std::size_t> find(const Key& k) const;
  std::optional<std::size_t> find_label(std::string_view label) const;

  const std::vector<std::vector<std::size_t>>& classes() const noexcept { return classes_; }
  std::size_t class_of(std::size_t g) const { return class_of_.at(g); }

  // Small generating set used for build-time checks and `group info`.
  const std::vector<std::size_t>& generators() const noexcept { return generators_; }
  void set_generators(std::vector<std::size_t> gens) { generators_ = std::move(gens); }

 private:
  std::string name_;
  GroupFamily family_;
  int degree_;
  int root_order_;
  std::vector<Key> keys_;
  std::vector<std::string> labels_;
  Compose compose_;
  std::map<Key, std::size_t> index_;
  std::map<std::string, std::size_t, std::less<>> label_index_;
  std::size_t identity_ = 0;
  std::vector<std::uint32_t> cayley_;  // filled only for small groups
  std::vector<std::size_t> inverse_;
  std::vector<std::vector<std::size_t>> classes_;
  std::vector<std::size_t> class_of_;
  std::vector<std::size_t> generators_;
};

using GroupPtr = std::shared_ptr<const FiniteGroup>;

GroupPtr build_symmetric_group(int n);
GroupPtr build_quaternion_group();
GroupPtr build_monomial_group(int d, int n);

// Names: s<n>, q, mu:d,n
GroupPtr group_from_name(std::string_view name);

// Partition by conjugation, classes sorted by their minimal element index.
std::vector<std::vector<std::size_t>> conjugacy_classes(const FiniteGroup& g);

struct GroupAxiomReport {
  bool identity = true;
  bool inverses = true;
  bool associative = true;
  bool classes = true;
  bool ok() const { return identity && inverses && associative && classes; }
};
// Exhaustive associativity only when order <= 200, otherwise checked on generator triples.
GroupAxiomReport verify_group_axioms(const FiniteGroup& g);

// Permutation helpers (0-based, one-line notation p[j] = σ(j)).
std::vector<int> compose_permutations(const std::vector<int>& s, const std::vector<int>& t);  // s∘t
std::string cycle_notation(const std::vector<int>& perm);
// Accepts "e", "id", "(01)", "(0 1)(2 3)" and products like "(23)(13)" read right to left.
std::vector<int> parse_permutation(std::string_view text, int n);

}  // namespace covmap
