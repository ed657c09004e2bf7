#include "covmap/groups.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "covmap/errors.hpp"

namespace covmap {

namespace {

constexpr std::size_t kCayleyLimit = 2048;

std::size_t factorial(int n) {
  std::size_t f = 1;
  for (int k = 2; k <= n; ++k) f *= static_cast<std::size_t>(k);
  return f;
}

}  // namespace

FiniteGroup::FiniteGroup(std::string name, GroupFamily family, int degree, int root_order,
                         std::vector<Key> keys, std::vector<std::string> labels, Compose compose)
    : name_(std::move(name)),
      family_(family),
      degree_(degree),
      root_order_(root_order),
      keys_(std::move(keys)),
      labels_(std::move(labels)),
      compose_(std::move(compose)) {
  if (keys_.empty() || keys_.size() != labels_.size())
    throw std::logic_error("group " + name_ + ": inconsistent element data");
  for (std::size_t g = 0; g < keys_.size(); ++g) {
    if (!index_.emplace(keys_[g], g).second) throw std::logic_error("group " + name_ + ": duplicate element");
    if (!label_index_.emplace(labels_[g], g).second) throw std::logic_error("group " + name_ + ": duplicate label");
  }

  const std::size_t n = keys_.size();
  if (n <= kCayleyLimit) {
    cayley_.resize(n * n);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        auto it = index_.find(compose_(keys_[a], keys_[b]));
        if (it == index_.end()) throw std::logic_error("group " + name_ + ": not closed");
        cayley_[a * n + b] = static_cast<std::uint32_t>(it->second);
      }
  }

  // identity: the unique e with e*g = g on every element we probe
  bool found = false;
  for (std::size_t e = 0; e < n && !found; ++e) {
    if (compose_(keys_[e], keys_[e]) == keys_[e]) {
      identity_ = e;
      found = true;
    }
  }
  if (!found) throw std::logic_error("group " + name_ + ": no identity");

  inverse_.assign(n, 0);
  for (std::size_t g = 0; g < n; ++g) {
    std::size_t prev = identity_;
    std::size_t cur = g;
    std::size_t steps = 0;
    while (cur != identity_) {
      prev = cur;
      cur = multiply(cur, g);
      if (++steps > n) throw std::logic_error("group " + name_ + ": element of infinite order");
    }
    // g^k = e with prev = g^{k-1}
    inverse_[g] = (g == identity_) ? identity_ : prev;
  }

  classes_ = conjugacy_classes(*this);
  class_of_.assign(n, 0);
  for (std::size_t c = 0; c < classes_.size(); ++c)
    for (std::size_t g : classes_[c]) class_of_[g] = c;
}

std::size_t FiniteGroup::multiply(std::size_t a, std::size_t b) const {
  const std::size_t n = keys_.size();
  if (!cayley_.empty()) return cayley_[a * n + b];
  auto it = index_.find(compose_(keys_.at(a), keys_.at(b)));
  if (it == index_.end()) throw std::logic_error("group " + name_ + ": not closed");
  return it->second;
}

std::optional<std::size_t> FiniteGroup::find(const Key& k) const {
  auto it = index_.find(k);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> FiniteGroup::find_label(std::string_view label) const {
  auto it = label_index_.find(label);
  if (it == label_index_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::vector<std::size_t>> conjugacy_classes(const FiniteGroup& g) {
  const std::size_t n = g.order();
  std::vector<char> seen(n, 0);
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t x = 0; x < n; ++x) {
    if (seen[x]) continue;
    std::vector<std::size_t> cls;
    for (std::size_t h = 0; h < n; ++h) {
      const std::size_t y = g.multiply(g.multiply(h, x), g.inverse(h));
      if (!seen[y]) {
        seen[y] = 1;
        cls.push_back(y);
      }
    }
    std::sort(cls.begin(), cls.end());
    out.push_back(std::move(cls));
  }
  // x runs upward, so each class is discovered at its minimal element already
  return out;
}

GroupAxiomReport verify_group_axioms(const FiniteGroup& g) {
  GroupAxiomReport r;
  const std::size_t n = g.order();
  const std::size_t e = g.identity();
  for (std::size_t a = 0; a < n; ++a) {
    if (g.multiply(e, a) != a || g.multiply(a, e) != a) r.identity = false;
    if (g.multiply(a, g.inverse(a)) != e || g.multiply(g.inverse(a), a) != e) r.inverses = false;
  }
  auto assoc = [&](std::size_t a, std::size_t b, std::size_t c) {
    return g.multiply(g.multiply(a, b), c) == g.multiply(a, g.multiply(b, c));
  };
  if (n <= 200) {
    for (std::size_t a = 0; a < n && r.associative; ++a)
      for (std::size_t b = 0; b < n && r.associative; ++b)
        for (std::size_t c = 0; c < n; ++c)
          if (!assoc(a, b, c)) {
            r.associative = false;
            break;
          }
  } else {
    for (std::size_t a = 0; a < n && r.associative; ++a)
      for (std::size_t b : g.generators())
        for (std::size_t c : g.generators())
          if (!assoc(a, b, c)) r.associative = false;
  }

  std::vector<int> count(n, 0);
  for (const auto& cls : g.classes()) {
    for (std::size_t x : cls) ++count[x];
    for (std::size_t x : cls)
      for (std::size_t h = 0; h < n; ++h)
        if (g.class_of(g.multiply(g.multiply(h, x), g.inverse(h))) != g.class_of(x)) r.classes = false;
  }
  if (std::any_of(count.begin(), count.end(), [](int c) { return c != 1; })) r.classes = false;
  return r;
}

std::vector<int> compose_permutations(const std::vector<int>& s, const std::vector<int>& t) {
  std::vector<int> out(t.size());
  for (std::size_t j = 0; j < t.size(); ++j) out[j] = s[t[j]];
  return out;
}

std::string cycle_notation(const std::vector<int>& perm) {
  const std::size_t n = perm.size();
  std::vector<char> seen(n, 0);
  std::string out;
  for (std::size_t start = 0; start < n; ++start) {
    if (seen[start] || perm[start] == static_cast<int>(start)) continue;
    out += '(';
    std::size_t cur = start;
    while (!seen[cur]) {
      seen[cur] = 1;
      out += std::to_string(cur);
      cur = static_cast<std::size_t>(perm[cur]);
    }
    out += ')';
  }
  return out.empty() ? "e" : out;
}

std::vector<int> parse_permutation(std::string_view text, int n) {
  std::vector<int> result(static_cast<std::size_t>(n));
  std::iota(result.begin(), result.end(), 0);
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c)) && c != ',') s += c;
  if (s.empty() || s == "e" || s == "id" || s == "()") return result;

  std::vector<std::vector<int>> cycles;
  std::size_t pos = 0;
  while (pos < s.size()) {
    if (s[pos] != '(') throw ValidationError("bad permutation syntax: " + std::string(text));
    const std::size_t close = s.find(')', pos);
    if (close == std::string::npos) throw ValidationError("unbalanced parenthesis: " + std::string(text));
    std::vector<int> cyc;
    for (std::size_t k = pos + 1; k < close; ++k) {
      if (!std::isdigit(static_cast<unsigned char>(s[k])))
        throw ValidationError("bad permutation point in: " + std::string(text));
      const int p = s[k] - '0';
      if (p >= n) throw ValidationError("point out of range in: " + std::string(text));
      if (std::find(cyc.begin(), cyc.end(), p) != cyc.end())
        throw ValidationError("repeated point in cycle: " + std::string(text));
      cyc.push_back(p);
    }
    cycles.push_back(std::move(cyc));
    pos = close + 1;
  }
  // rightmost cycle acts first
  for (auto it = cycles.rbegin(); it != cycles.rend(); ++it) {
    std::vector<int> c(static_cast<std::size_t>(n));
    std::iota(c.begin(), c.end(), 0);
    for (std::size_t k = 0; k < it->size(); ++k) c[(*it)[k]] = (*it)[(k + 1) % it->size()];
    result = compose_permutations(c, result);
  }
  return result;
}

GroupPtr build_symmetric_group(int n) {
  if (n < 1 || n > 8) throw ValidationError("S(n) supported for 1 <= n <= 8");
  if (factorial(n) > kEnumerationBound)
    throw ValidationError("S(" + std::to_string(n) + ") has " + std::to_string(factorial(n)) +
                          " elements, above the enumeration bound of " + std::to_string(kEnumerationBound));
  std::vector<int> p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  std::vector<FiniteGroup::Key> keys;
  std::vector<std::string> labels;
  do {
    keys.push_back(p);
    labels.push_back(cycle_notation(p));
  } while (std::next_permutation(p.begin(), p.end()));

  auto group = std::make_shared<FiniteGroup>("s" + std::to_string(n), GroupFamily::symmetric, n, 0,
                                             std::move(keys), std::move(labels), compose_permutations);
  std::vector<std::size_t> gens;
  if (n >= 2) {
    gens.push_back(*group->find(parse_permutation("(01)", n)));
    std::string cyc = "(";
    for (int k = 0; k < n; ++k) cyc += static_cast<char>('0' + k);
    cyc += ")";
    gens.push_back(*group->find(parse_permutation(cyc, n)));
  }
  group->set_generators(std::move(gens));
  return group;
}

GroupPtr build_quaternion_group() {
  // units 0..3 = e,i,j,k; unit products with sign
  static const int unit_prod[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  static const int sign_prod[4][4] = {{1, 1, 1, 1}, {1, -1, 1, -1}, {1, -1, -1, 1}, {1, 1, -1, -1}};
  auto compose = [](const FiniteGroup::Key& a, const FiniteGroup::Key& b) {
    return FiniteGroup::Key{a[0] * b[0] * sign_prod[a[1]][b[1]], unit_prod[a[1]][b[1]]};
  };
  const char* names = "eijk";
  std::vector<FiniteGroup::Key> keys;
  std::vector<std::string> labels;
  for (int u = 0; u < 4; ++u)
    for (int s : {1, -1}) {
      keys.push_back({s, u});
      labels.push_back(std::string(s < 0 ? "-" : "") + names[u]);
    }
  auto group = std::make_shared<FiniteGroup>("q", GroupFamily::quaternion, 2, 0, std::move(keys),
                                             std::move(labels), compose);
  group->set_generators({*group->find_label("i"), *group->find_label("j")});
  return group;
}

GroupPtr build_monomial_group(int d, int n) {
  if (d < 1 || n < 1) throw ValidationError("MU(d,n) requires d >= 1 and n >= 1");
  double size = static_cast<double>(factorial(std::min(d, 20)));
  for (int k = 0; k < d; ++k) size *= n;
  if (d > 12 || size > static_cast<double>(kEnumerationBound))
    throw ValidationError("MU(" + std::to_string(d) + "," + std::to_string(n) +
                          ") exceeds the enumeration bound of " + std::to_string(kEnumerationBound));

  // U = D P with D = diag(ω^{e_i}), P_{iσ(j)} = 1.  (D1P1)(D2P2) = D1 (P1 D2 P1^{-1}) P1P2.
  auto compose = [d, n](const FiniteGroup::Key& a, const FiniteGroup::Key& b) {
    FiniteGroup::Key out(2 * static_cast<std::size_t>(d));
    std::vector<int> s1(a.begin() + d, a.end());
    std::vector<int> s1inv(static_cast<std::size_t>(d));
    for (int j = 0; j < d; ++j) s1inv[s1[j]] = j;
    for (int i = 0; i < d; ++i) out[i] = (a[i] + b[s1inv[i]]) % n;
    for (int j = 0; j < d; ++j) out[d + j] = s1[b[d + j]];
    return out;
  };

  std::vector<FiniteGroup::Key> keys;
  std::vector<std::string> labels;
  std::vector<int> perm(static_cast<std::size_t>(d));
  std::iota(perm.begin(), perm.end(), 0);
  do {
    std::vector<int> ex(static_cast<std::size_t>(d), 0);
    while (true) {
      FiniteGroup::Key k(ex);
      k.insert(k.end(), perm.begin(), perm.end());
      keys.push_back(k);
      std::ostringstream lab;
      lab << "D[";
      for (int i = 0; i < d; ++i) lab << (i ? "," : "") << ex[i];
      lab << "]P" << cycle_notation(perm);
      labels.push_back(lab.str());
      int pos = d - 1;
      while (pos >= 0 && ++ex[pos] == n) ex[pos--] = 0;
      if (pos < 0) break;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));

  auto group = std::make_shared<FiniteGroup>("mu:" + std::to_string(d) + "," + std::to_string(n),
                                             GroupFamily::monomial, d, n, std::move(keys),
                                             std::move(labels), compose);
  std::vector<std::size_t> gens;
  FiniteGroup::Key phase(2 * static_cast<std::size_t>(d), 0);
  for (int j = 0; j < d; ++j) phase[d + j] = j;
  if (n > 1) {
    phase[0] = 1;
    gens.push_back(*group->find(phase));
  }
  if (d > 1) {
    FiniteGroup::Key swap(2 * static_cast<std::size_t>(d), 0);
    FiniteGroup::Key cyc(2 * static_cast<std::size_t>(d), 0);
    for (int j = 0; j < d; ++j) {
      swap[d + j] = j;
      cyc[d + j] = (j + 1) % d;
    }
    std::swap(swap[d], swap[d + 1]);
    gens.push_back(*group->find(swap));
    if (d > 2) gens.push_back(*group->find(cyc));
  }
  group->set_generators(std::move(gens));
  return group;
}

GroupPtr group_from_name(std::string_view name) {
  std::string s(name);
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  if (s == "q" || s == "quaternion") return build_quaternion_group();
  if (s.size() >= 2 && s[0] == 's' && std::all_of(s.begin() + 1, s.end(), ::isdigit))
    return build_symmetric_group(std::stoi(s.substr(1)));
  if (s.rfind("mu:", 0) == 0) {
    const std::string rest = s.substr(3);
    const auto comma = rest.find(',');
    int d = 0, n = 0;
    try {
      if (comma == std::string::npos) throw std::invalid_argument("");
      std::size_t used_d = 0, used_n = 0;
      d = std::stoi(rest.substr(0, comma), &used_d);
      n = std::stoi(rest.substr(comma + 1), &used_n);
      if (used_d != comma || used_n != rest.size() - comma - 1) throw std::invalid_argument("");
    } catch (const std::exception&) {
      throw ValidationError("expected mu:d,n but got " + std::string(name));
    }
    return build_monomial_group(d, n);
  }
  throw ValidationError("unknown group: " + std::string(name) + " (expected s3, s4, ..., q, mu:d,n)");
}

}  // namespace covmap
