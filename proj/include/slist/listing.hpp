#pragma once

// Finite sets, listings (maps into finite sequences) and the
// perfect/function factorization.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

namespace slist {

using Index = std::size_t;
using Seq = std::vector<Index>;

/// Ordered carrier with distinct labels.
struct FiniteSet {
  std::vector<std::string> labels;

  FiniteSet() = default;
  explicit FiniteSet(std::vector<std::string> ls) : labels(std::move(ls)) {
    std::unordered_set<std::string> seen;
    for (const auto& l : labels)
      if (!seen.insert(l).second)
        throw std::invalid_argument("duplicate label '" + l + "' in finite set");
  }

  static FiniteSet numbered(std::size_t n, const std::string& prefix) {
    std::vector<std::string> ls;
    ls.reserve(n);
    for (std::size_t i = 0; i < n; ++i) ls.push_back(prefix + std::to_string(i));
    return FiniteSet(std::move(ls));
  }

  std::size_t size() const { return labels.size(); }

  std::optional<Index> index_of(const std::string& l) const {
    auto it = std::find(labels.begin(), labels.end(), l);
    if (it == labels.end()) return std::nullopt;
    return static_cast<Index>(it - labels.begin());
  }

  bool operator==(const FiniteSet&) const = default;
};

/// A listing A -/-> X: each source element goes to an ordered sequence of
/// target elements. Elements are positions in the carriers.
class Listing {
 public:
  Listing() = default;
  Listing(std::size_t source_size, std::size_t target_size, std::vector<Seq> images)
      : src_(source_size), tgt_(target_size), images_(std::move(images)) {
    if (images_.size() != src_) throw std::invalid_argument("listing: one image per source element required");
    for (const auto& im : images_)
      for (Index x : im)
        if (x >= tgt_) throw std::invalid_argument("listing: image entry outside target");
  }

  static Listing identity(std::size_t n) {
    std::vector<Seq> im(n);
    for (Index i = 0; i < n; ++i) im[i] = {i};
    return Listing(n, n, std::move(im));
  }

  static Listing from_function(const std::vector<Index>& f, std::size_t target_size) {
    std::vector<Seq> im;
    im.reserve(f.size());
    for (Index x : f) im.push_back({x});
    return Listing(f.size(), target_size, std::move(im));
  }

  std::size_t source_size() const { return src_; }
  std::size_t target_size() const { return tgt_; }
  const Seq& operator()(Index a) const { return images_.at(a); }
  const std::vector<Seq>& images() const { return images_; }
  std::vector<Seq>& mutable_images() { return images_; }

  bool is_function() const {
    return std::all_of(images_.begin(), images_.end(), [](const Seq& s) { return s.size() == 1; });
  }

  // Only meaningful when is_function().
  std::vector<Index> as_function() const {
    std::vector<Index> f;
    f.reserve(src_);
    for (const auto& s : images_) {
      if (s.size() != 1) throw std::domain_error("listing is not a function");
      f.push_back(s[0]);
    }
    return f;
  }

  // Applies the listing to a sequence, concatenating the images.
  Seq apply(const Seq& xs) const {
    Seq out;
    for (Index x : xs) {
      const Seq& im = images_.at(x);
      out.insert(out.end(), im.begin(), im.end());
    }
    return out;
  }

  bool operator==(const Listing&) const = default;

 private:
  std::size_t src_ = 0;
  std::size_t tgt_ = 0;
  std::vector<Seq> images_;
};

/// v after u, by concatenation.
inline Listing compose(const Listing& v, const Listing& u) {
  if (u.target_size() != v.source_size())
    throw std::invalid_argument("compose: target of u does not match source of v");
  std::vector<Seq> im;
  im.reserve(u.source_size());
  for (const auto& s : u.images()) im.push_back(v.apply(s));
  return Listing(u.source_size(), v.target_size(), std::move(im));
}

inline bool is_perfect(const Listing& u) {
  std::vector<int> hits(u.target_size(), 0);
  for (const auto& s : u.images())
    for (Index x : s)
      if (++hits[x] > 1) return false;
  return std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; });
}

struct MiddleElement {
  Index a;
  std::size_t i;  // 1-based position in u(a)
  bool operator==(const MiddleElement&) const = default;
  auto operator<=>(const MiddleElement&) const = default;
};

struct Factorization {
  std::vector<MiddleElement> middle;
  Listing perfect;  // A -/-> middle
  Listing func;     // middle -> X
};

inline Factorization perfect_factorize(const Listing& u) {
  Factorization f;
  std::vector<Seq> perf(u.source_size());
  std::vector<Index> fn;
  for (Index a = 0; a < u.source_size(); ++a) {
    const Seq& s = u(a);
    for (std::size_t i = 0; i < s.size(); ++i) {
      perf[a].push_back(f.middle.size());
      f.middle.push_back({a, i + 1});
      fn.push_back(s[i]);
    }
  }
  f.perfect = Listing(u.source_size(), f.middle.size(), std::move(perf));
  f.func = Listing::from_function(fn, u.target_size());
  return f;
}

/// Given another factorization u = func2 . perfect2, returns the bijection
/// from the canonical middle to the other middle, or nullopt if the pair is
/// not a perfect/function factorization of u.
inline std::optional<std::vector<Index>> middle_bijection(const Listing& u, const Listing& perfect2,
                                                         const Listing& func2) {
  if (!is_perfect(perfect2) || !func2.is_function()) return std::nullopt;
  if (perfect2.source_size() != u.source_size() || func2.source_size() != perfect2.target_size())
    return std::nullopt;
  if (compose(func2, perfect2) != u) return std::nullopt;
  std::vector<Index> sigma;
  std::vector<bool> hit(perfect2.target_size(), false);
  for (Index a = 0; a < u.source_size(); ++a) {
    const Seq& s = perfect2(a);
    if (s.size() != u(a).size()) return std::nullopt;
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (hit[s[i]] || func2(s[i])[0] != u(a)[i]) return std::nullopt;
      hit[s[i]] = true;
      sigma.push_back(s[i]);
    }
  }
  if (sigma.size() != perfect2.target_size()) return std::nullopt;
  return sigma;
}

/// Listing between factorization middles induced by a commuting square
/// q . u = v . p  (p : A -/-> B, q : X -/-> Y, u : A -/-> X, v : B -/-> Y).
/// The entries over a are the middle elements (b, j), b running through p(a),
/// cut into consecutive blocks of the lengths |q(u(a)_i)|.
inline Listing induced_middle(const Listing& p, const Listing& q, const Listing& u, const Listing& v) {
  if (p.source_size() != u.source_size() || p.target_size() != v.source_size() ||
      u.target_size() != q.source_size() || q.target_size() != v.target_size())
    throw std::invalid_argument("induced_middle: square is not well formed");
  if (compose(q, u) != compose(v, p)) throw std::invalid_argument("induced_middle: square does not commute");

  std::vector<Index> u_off(u.source_size() + 1, 0), v_off(v.source_size() + 1, 0);
  for (Index a = 0; a < u.source_size(); ++a) u_off[a + 1] = u_off[a] + u(a).size();
  for (Index b = 0; b < v.source_size(); ++b) v_off[b + 1] = v_off[b] + v(b).size();

  std::vector<Seq> r(u_off.back());
  for (Index a = 0; a < u.source_size(); ++a) {
    Seq run;
    for (Index b : p(a))
      for (Index j = 0; j < v(b).size(); ++j) run.push_back(v_off[b] + j);
    std::size_t pos = 0;
    for (std::size_t i = 0; i < u(a).size(); ++i) {
      std::size_t len = q(u(a)[i]).size();
      r[u_off[a] + i].assign(run.begin() + pos, run.begin() + pos + len);
      pos += len;
    }
  }
  return Listing(u_off.back(), v_off.back(), std::move(r));
}

}  // namespace slist
