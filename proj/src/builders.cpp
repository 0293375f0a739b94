#include "torusq/builders.hpp"

#include <string>
#include <vector>

namespace torusq {

namespace {

using Covers = std::vector<std::pair<std::string, std::string>>;

std::string subset_id(const std::vector<int>& s) {
  if (s.empty()) return "int";
  std::string id = "f";
  for (std::size_t i = 0; i < s.size(); ++i) id += (i ? "_" : "") + std::to_string(s[i]);
  return id;
}

}  // namespace

FacePoset closed_poset(int dim, bool noncompact) {
  return FacePoset::build({{"int", 0, dim, noncompact}}, {});
}

FacePoset circle_poset() { return closed_poset(1); }
FacePoset line_poset() { return closed_poset(1, true); }

FacePoset halfline_poset() {
  return FacePoset::build({{"int", 0, 1, true}, {"a", 1, 0}}, {{"a", "int"}});
}

FacePoset interval_poset() {
  return FacePoset::build({{"int", 0, 1}, {"a", 1, 0}, {"b", 1, 0}},
                          {{"a", "int"}, {"b", "int"}});
}

FacePoset simplex_poset(int n) {
  std::vector<Face> faces;
  Covers covers;
  const int facets = n + 1;
  for (unsigned mask = 0; mask < (1u << facets); ++mask) {
    std::vector<int> s;
    for (int j = 0; j < facets; ++j)
      if (mask & (1u << j)) s.push_back(j);
    if (static_cast<int>(s.size()) > n) continue;
    faces.push_back({subset_id(s), static_cast<int>(s.size()), n - static_cast<int>(s.size())});
    for (std::size_t drop = 0; drop < s.size(); ++drop) {
      std::vector<int> t = s;
      t.erase(t.begin() + static_cast<std::ptrdiff_t>(drop));
      covers.emplace_back(subset_id(s), subset_id(t));
    }
  }
  return FacePoset::build(std::move(faces), covers);
}

FacePoset polygon_poset(int m) {
  std::vector<Face> faces{{"int", 0, 2}};
  Covers covers;
  for (int i = 0; i < m; ++i) faces.push_back({"e" + std::to_string(i), 1, 1});
  for (int i = 0; i < m; ++i) {
    const std::string v = "v" + std::to_string(i);
    faces.push_back({v, 2, 0});
    covers.emplace_back(v, "e" + std::to_string(i));
    covers.emplace_back(v, "e" + std::to_string((i + 1) % m));
  }
  for (int i = 0; i < m; ++i) covers.emplace_back("e" + std::to_string(i), "int");
  return FacePoset::build(std::move(faces), covers);
}

FacePoset cube_poset(int n) {
  std::vector<Face> faces;
  Covers covers;
  int total = 1;
  for (int i = 0; i < n; ++i) total *= 3;
  for (int code = 0; code < total; ++code) {
    std::string word;
    int c = code, depth = 0;
    for (int i = 0; i < n; ++i, c /= 3) {
      const int digit = c % 3;
      word += digit == 2 ? '*' : static_cast<char>('0' + digit);
      depth += digit != 2;
    }
    faces.push_back({word, depth, n - depth});
    for (int i = 0; i < n; ++i)
      if (word[i] != '*') {
        std::string up = word;
        up[i] = '*';
        covers.emplace_back(word, up);
      }
  }
  return FacePoset::build(std::move(faces), covers);
}

FacePoset product_poset(const FacePoset& p, const FacePoset& q) {
  std::vector<Face> faces;
  Covers covers;
  auto pair_id = [](const std::string& a, const std::string& b) { return a + "|" + b; };
  for (const auto& a : p.faces())
    for (const auto& b : q.faces())
      faces.push_back({pair_id(a.id, b.id), a.depth + b.depth, a.dim + b.dim,
                       a.depth + b.depth == 0 && (a.noncompact || b.noncompact)});
  for (const auto& [lo, hi] : p.cover_ids())
    for (const auto& b : q.faces()) covers.emplace_back(pair_id(lo, b.id), pair_id(hi, b.id));
  for (const auto& a : p.faces())
    for (const auto& [lo, hi] : q.cover_ids())
      covers.emplace_back(pair_id(a.id, lo), pair_id(a.id, hi));
  return FacePoset::build(std::move(faces), covers);
}

}  // namespace torusq
