#include "seqvote/types.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace seqvote {

StrictOrder StrictOrder::from_pairs(int m, const std::vector<std::pair<int, int>>& pairs) {
  if (m < 0) throw UsageError("negative number of alternatives");
  StrictOrder o(m);
  for (const auto& [a, b] : pairs) {
    if (a < 0 || a >= m || b < 0 || b >= m)
      throw UsageError("pair references unknown alternative id");
    if (a == b) throw UsageError("reflexive preference pair");
    o.set(a, b);
  }
  // Warshall closure.
  for (int k = 0; k < m; ++k)
    for (int i = 0; i < m; ++i) {
      if (!o.prefers(i, k)) continue;
      for (int j = 0; j < m; ++j)
        if (o.prefers(k, j)) o.set(i, j);
    }
  for (int i = 0; i < m; ++i)
    if (o.prefers(i, i)) throw UsageError("cyclic preference specification");
  return o;
}

StrictOrder StrictOrder::from_ranking(const std::vector<int>& ranking) {
  int m = static_cast<int>(ranking.size());
  std::vector<bool> seen(m, false);
  StrictOrder o(m);
  for (int i = 0; i < m; ++i) {
    int a = ranking[i];
    if (a < 0 || a >= m || seen[a]) throw UsageError("ranking is not a permutation");
    seen[a] = true;
    for (int j = i + 1; j < m; ++j) o.set(a, ranking[j]);
  }
  return o;
}

int StrictOrder::pair_count() const {
  int c = 0;
  for (uint8_t v : rel_) c += v;
  return c;
}

std::vector<int> StrictOrder::as_ranking() const {
  if (!is_linear()) throw UsageError("order is not linear");
  std::vector<int> r(m_);
  std::iota(r.begin(), r.end(), 0);
  std::sort(r.begin(), r.end(), [&](int a, int b) { return prefers(a, b); });
  return r;
}

std::vector<std::pair<int, int>> StrictOrder::pairs() const {
  std::vector<std::pair<int, int>> out;
  for (int a = 0; a < m_; ++a)
    for (int b = 0; b < m_; ++b)
      if (prefers(a, b)) out.emplace_back(a, b);
  return out;
}

StrictOrder StrictOrder::extended(const std::vector<std::pair<int, int>>& extra) const {
  auto ps = pairs();
  ps.insert(ps.end(), extra.begin(), extra.end());
  return from_pairs(m_, ps);
}

bool StrictOrder::extends(const StrictOrder& base) const {
  if (m_ != base.m_) return false;
  for (size_t i = 0; i < rel_.size(); ++i)
    if (base.rel_[i] && !rel_[i]) return false;
  return true;
}

namespace {

// Enumerates linear extensions by repeatedly choosing a minimal element.
size_t extensions_rec(const StrictOrder& o, std::vector<int>& prefix, std::vector<bool>& used,
                      std::vector<StrictOrder>* out, size_t limit, size_t produced) {
  int m = o.num_alternatives();
  if (static_cast<int>(prefix.size()) == m) {
    if (out) out->push_back(StrictOrder::from_ranking(prefix));
    return produced + 1;
  }
  for (int a = 0; a < m && (limit == 0 || produced < limit); ++a) {
    if (used[a]) continue;
    bool minimal = true;
    for (int b = 0; b < m; ++b)
      if (!used[b] && b != a && o.prefers(b, a)) {
        minimal = false;
        break;
      }
    if (!minimal) continue;
    used[a] = true;
    prefix.push_back(a);
    produced = extensions_rec(o, prefix, used, out, limit, produced);
    prefix.pop_back();
    used[a] = false;
  }
  return produced;
}

}  // namespace

size_t StrictOrder::linear_extensions(std::vector<StrictOrder>* out, size_t limit) const {
  std::vector<int> prefix;
  std::vector<bool> used(m_, false);
  return extensions_rec(*this, prefix, used, out, limit, 0);
}

size_t StrictOrder::count_linear_extensions(size_t cap) const {
  return linear_extensions(nullptr, cap);
}

long long Profile::num_voters() const {
  long long n = 0;
  for (const auto& v : voters) n += v.multiplicity;
  return n;
}

Weight Profile::total_weight() const {
  Weight w = 0;
  for (const auto& v : voters) w += v.total_weight();
  return w;
}

bool Profile::is_complete() const {
  return std::all_of(voters.begin(), voters.end(),
                     [](const Voter& v) { return v.order.is_linear(); });
}

int Profile::alternative_id(const std::string& label) const {
  for (int i = 0; i < num_alternatives(); ++i)
    if (labels[i] == label) return i;
  throw UsageError("unknown alternative label: " + label);
}

void Profile::validate() const {
  int m = num_alternatives();
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      if (labels[i] == labels[j]) throw UsageError("duplicate alternative label: " + labels[i]);
  for (const auto& v : voters) {
    if (v.order.num_alternatives() != m)
      throw UsageError("voter order dimension does not match profile");
    if (v.weight < 1) throw UsageError("voter weight must be positive");
    if (v.multiplicity < 1) throw UsageError("voter multiplicity must be positive");
  }
}

std::string procedure_name(Procedure p) {
  return p == Procedure::Successive ? "successive" : "amendment";
}

Procedure procedure_from_name(const std::string& name) {
  if (name == "successive") return Procedure::Successive;
  if (name == "amendment") return Procedure::Amendment;
  throw UsageError("unknown procedure: " + name + " (expected successive|amendment)");
}

}  // namespace seqvote
