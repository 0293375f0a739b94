#include "torusq/corners.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <tuple>

namespace torusq {

namespace {

std::vector<std::string> ids_of(const FacePoset& p, const std::vector<std::size_t>& idx) {
  std::vector<std::string> out;
  out.reserve(idx.size());
  for (auto i : idx) out.push_back(p.face(i).id);
  return out;
}

}  // namespace

FacePoset FacePoset::build(std::vector<Face> faces,
                           const std::vector<std::pair<std::string, std::string>>& covers,
                           std::optional<Support> support) {
  FacePoset p;
  p.faces_ = std::move(faces);
  for (std::size_t i = 0; i < p.faces_.size(); ++i) {
    if (!p.index_.emplace(p.faces_[i].id, i).second)
      throw Error("duplicate face id '" + p.faces_[i].id + "'");
  }
  p.up_.assign(p.faces_.size(), {});
  p.down_.assign(p.faces_.size(), {});
  for (const auto& [lo, hi] : covers) {
    const std::size_t a = p.index_of(lo);
    const std::size_t b = p.index_of(hi);
    if (std::find(p.up_[a].begin(), p.up_[a].end(), b) != p.up_[a].end())
      throw Error("duplicate cover (" + lo + ", " + hi + ")");
    p.covers_.emplace_back(a, b);
    p.up_[a].push_back(b);
    p.down_[b].push_back(a);
  }
  for (auto& v : p.up_) std::sort(v.begin(), v.end());
  for (auto& v : p.down_) std::sort(v.begin(), v.end());

  p.support_.assign(p.faces_.size(), {});
  for (std::size_t i = 0; i < p.faces_.size(); ++i) {
    const std::string& id = p.faces_[i].id;
    if (support && support->count(id)) {
      for (const auto& f : support->at(id)) p.support_[i].push_back(p.index_of(f));
    } else {
      if (p.faces_[i].depth == 1) p.support_[i].push_back(i);
      for (auto j : p.above(i))
        if (p.faces_[j].depth == 1) p.support_[i].push_back(j);
    }
    std::sort(p.support_[i].begin(), p.support_[i].end());
    p.support_[i].erase(std::unique(p.support_[i].begin(), p.support_[i].end()),
                        p.support_[i].end());
  }
  if (support)
    for (const auto& [id, facets] : *support) p.index_of(id);
  return p;
}

std::optional<std::size_t> FacePoset::find(const std::string& id) const {
  auto it = index_.find(id);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t FacePoset::index_of(const std::string& id) const {
  auto it = index_.find(id);
  if (it == index_.end()) throw Error("unknown face id '" + id + "'");
  return it->second;
}

std::vector<std::size_t> FacePoset::facets() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < faces_.size(); ++i)
    if (faces_[i].depth == 1) out.push_back(i);
  return out;
}

std::vector<std::pair<std::string, std::string>> FacePoset::cover_ids() const {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& [a, b] : covers_) out.emplace_back(faces_[a].id, faces_[b].id);
  return out;
}

FacePoset::Support FacePoset::support_ids() const {
  Support out;
  for (std::size_t i = 0; i < faces_.size(); ++i) {
    auto& s = out[faces_[i].id];
    for (auto f : support_[i]) s.insert(faces_[f].id);
  }
  return out;
}

std::vector<std::size_t> FacePoset::above(std::size_t i) const {
  std::vector<char> seen(faces_.size(), 0);
  std::vector<std::size_t> stack(up_[i].begin(), up_[i].end());
  std::vector<std::size_t> out;
  while (!stack.empty()) {
    std::size_t j = stack.back();
    stack.pop_back();
    if (seen[j]) continue;
    seen[j] = 1;
    out.push_back(j);
    for (auto u : up_[j])
      if (!seen[u]) stack.push_back(u);
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool FacePoset::operator==(const FacePoset& other) const {
  if (faces_ != other.faces_) return false;
  auto a = cover_ids();
  auto b = other.cover_ids();
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return a == b && support_ids() == other.support_ids();
}

PosetReport validate_poset(const FacePoset& p) {
  PosetReport report;
  auto flag = [&](std::string kind, std::vector<std::string> ids, std::string msg) {
    report.violations.push_back({std::move(kind), std::move(ids), std::move(msg)});
  };
  const std::size_t n = p.size();

  for (std::size_t i = 0; i < n; ++i) {
    const Face& f = p.face(i);
    if (f.depth < 0 || f.dim < 0) flag("range", {f.id}, "negative depth or dimension");
    if (f.noncompact && f.depth != 0)
      flag("noncompact flag", {f.id}, "only depth-0 faces can be noncompact");
    if (static_cast<std::size_t>(std::max(f.depth, 0)) != p.support(i).size())
      flag("depth-support", {f.id},
           "depth " + std::to_string(f.depth) + " != support count " +
               std::to_string(p.support(i).size()));
    for (auto s : p.support(i))
      if (p.face(s).depth != 1)
        flag("support", {f.id, p.face(s).id}, "support names a face that is not a facet");
    if (f.depth == 1 && p.support(i) != std::vector<std::size_t>{i})
      flag("facet support", {f.id}, "a facet must be supported by itself alone");
  }

  for (const auto& [lo, hi] : p.covers()) {
    const Face& a = p.face(lo);
    const Face& b = p.face(hi);
    if (b.dim != a.dim + 1 || a.depth != b.depth + 1)
      flag("grading", {a.id, b.id}, "cover must raise dim by one and lower depth by one");
  }

  // Kahn's algorithm on the upward cover graph.
  {
    std::vector<std::size_t> indeg(n, 0);
    for (const auto& c : p.covers()) ++indeg[c.second];
    std::deque<std::size_t> queue;
    for (std::size_t i = 0; i < n; ++i)
      if (indeg[i] == 0) queue.push_back(i);
    std::size_t seen = 0;
    while (!queue.empty()) {
      auto i = queue.front();
      queue.pop_front();
      ++seen;
      for (auto u : p.up(i))
        if (--indeg[u] == 0) queue.push_back(u);
    }
    if (seen != n) flag("cycle", {}, "covering relations contain a cycle");
  }

  // Closure condition: the facets whose closure contains F are exactly its support.
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::size_t> closure;
    if (p.face(i).depth == 1) closure.push_back(i);
    for (auto j : p.above(i))
      if (p.face(j).depth == 1) closure.push_back(j);
    std::sort(closure.begin(), closure.end());
    if (closure != p.support(i))
      flag("closure", {p.face(i).id},
           "face lies in the closure of facets {" + [&] {
             std::string s;
             for (auto c : closure) s += (s.empty() ? "" : ",") + p.face(c).id;
             return s;
           }() + "} but is supported by a different set");
  }

  // Connected components: one interior face each, constant dim + depth.
  std::vector<std::size_t> comp(n, n);
  std::size_t ncomp = 0;
  for (std::size_t s = 0; s < n; ++s) {
    if (comp[s] != n) continue;
    std::vector<std::size_t> stack{s};
    comp[s] = ncomp;
    std::vector<std::size_t> members;
    while (!stack.empty()) {
      auto i = stack.back();
      stack.pop_back();
      members.push_back(i);
      for (const auto* adj : {&p.up(i), &p.down(i)})
        for (auto j : *adj)
          if (comp[j] == n) {
            comp[j] = ncomp;
            stack.push_back(j);
          }
    }
    std::sort(members.begin(), members.end());
    std::vector<std::size_t> interiors;
    for (auto i : members)
      if (p.face(i).depth == 0) interiors.push_back(i);
    if (interiors.size() != 1)
      flag("interior", ids_of(p, members),
           "component has " + std::to_string(interiors.size()) + " depth-0 faces");
    const int top = p.face(members.front()).dim + p.face(members.front()).depth;
    for (auto i : members)
      if (p.face(i).dim + p.face(i).depth != top) {
        flag("dimension", {p.face(i).id}, "dim + depth differs within a component");
        break;
      }
    ++ncomp;
  }
  return report;
}

std::vector<std::string> strata(const FacePoset& p, int k) {
  std::vector<std::string> out;
  for (const auto& f : p.faces())
    if (f.depth == k) out.push_back(f.id);
  return out;
}

namespace {

using Signature = std::tuple<int, int, bool, std::size_t, std::size_t>;

Signature signature(const FacePoset& p, std::size_t i) {
  const Face& f = p.face(i);
  return {f.depth, f.dim, f.noncompact, p.up(i).size(), p.down(i).size()};
}

class IsoSearch {
 public:
  IsoSearch(const FacePoset& a, const FacePoset& b,
            const std::function<bool(const FaceBijection&)>& visit, const FaceFilter& filter)
      : a_(a), b_(b), visit_(visit), filter_(filter) {}

  std::size_t run() {
    const std::size_t n = a_.size();
    if (n != b_.size()) return 0;
    std::vector<Signature> sa, sb;
    for (std::size_t i = 0; i < n; ++i) {
      sa.push_back(signature(a_, i));
      sb.push_back(signature(b_, i));
    }
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    if (sa != sb) return 0;

    // Breadth-first order from each depth-0 face, so most faces have an
    // assigned neighbour when their turn comes.
    std::vector<std::size_t> starts(n);
    std::iota(starts.begin(), starts.end(), 0);
    std::stable_sort(starts.begin(), starts.end(), [&](auto x, auto y) {
      return a_.face(x).depth < a_.face(y).depth;
    });
    std::vector<char> queued(n, 0);
    for (auto s : starts) {
      if (queued[s]) continue;
      std::deque<std::size_t> q{s};
      queued[s] = 1;
      while (!q.empty()) {
        auto i = q.front();
        q.pop_front();
        order_.push_back(i);
        for (const auto* adj : {&a_.down(i), &a_.up(i)})
          for (auto j : *adj)
            if (!queued[j]) {
              queued[j] = 1;
              q.push_back(j);
            }
      }
    }
    image_.assign(n, kUnset);
    used_.assign(n, 0);
    stop_ = false;
    count_ = 0;
    extend(0);
    return count_;
  }

 private:
  static constexpr std::size_t kUnset = static_cast<std::size_t>(-1);

  bool compatible(std::size_t i, std::size_t j) const {
    if (signature(a_, i) != signature(b_, j)) return false;
    for (auto u : a_.up(i))
      if (image_[u] != kUnset && !std::binary_search(b_.up(j).begin(), b_.up(j).end(), image_[u]))
        return false;
    for (auto d : a_.down(i))
      if (image_[d] != kUnset &&
          !std::binary_search(b_.down(j).begin(), b_.down(j).end(), image_[d]))
        return false;
    return !filter_ || filter_(i, j);
  }

  void extend(std::size_t pos) {
    if (stop_) return;
    if (pos == order_.size()) {
      ++count_;
      if (!visit_(image_)) stop_ = true;
      return;
    }
    const std::size_t i = order_[pos];
    // Candidates: neighbours of an assigned neighbour's image, else everything.
    std::vector<std::size_t> candidates;
    bool anchored = false;
    for (auto u : a_.up(i))
      if (image_[u] != kUnset) {
        candidates = b_.down(image_[u]);
        anchored = true;
        break;
      }
    if (!anchored)
      for (auto d : a_.down(i))
        if (image_[d] != kUnset) {
          candidates = b_.up(image_[d]);
          anchored = true;
          break;
        }
    if (!anchored) {
      candidates.resize(b_.size());
      std::iota(candidates.begin(), candidates.end(), 0);
    }
    for (auto j : candidates) {
      if (used_[j] || !compatible(i, j)) continue;
      image_[i] = j;
      used_[j] = 1;
      extend(pos + 1);
      used_[j] = 0;
      image_[i] = kUnset;
      if (stop_) return;
    }
  }

  const FacePoset& a_;
  const FacePoset& b_;
  const std::function<bool(const FaceBijection&)>& visit_;
  const FaceFilter& filter_;
  std::vector<std::size_t> order_;
  FaceBijection image_;
  std::vector<char> used_;
  bool stop_ = false;
  std::size_t count_ = 0;
};

}  // namespace

std::size_t for_each_isomorphism(const FacePoset& p1, const FacePoset& p2,
                                 const std::function<bool(const FaceBijection&)>& visit,
                                 const FaceFilter& filter) {
  return IsoSearch(p1, p2, visit, filter).run();
}

std::vector<FaceBijection> poset_isomorphisms(const FacePoset& p1, const FacePoset& p2) {
  std::vector<FaceBijection> out;
  for_each_isomorphism(p1, p2, [&](const FaceBijection& b) {
    out.push_back(b);
    return true;
  });
  return out;
}

}  // namespace torusq
