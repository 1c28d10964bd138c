#pragma once

/// \file lee_core.hpp
/// \brief Words over Z_q, the Lee and Lee-infinity metrics, codes, and
/// exhaustive optima for tiny parameters.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <limits>
#include <numeric>
#include <ostream>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace leesdp {

enum class Metric { Lee, LeeInf };

inline std::string to_string(Metric m) { return m == Metric::Lee ? "lee" : "lee-inf"; }

inline Metric parse_metric(const std::string& s) {
  if (s == "lee" || s == "LEE") return Metric::Lee;
  if (s == "lee-inf" || s == "LEE_INF" || s == "leeinf") return Metric::LeeInf;
  throw std::invalid_argument("unknown metric '" + s + "'");
}

/// Raised when an exhaustive routine would exceed its configured size cap.
class LimitExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// q^n with overflow guard.
inline std::int64_t ipow(std::int64_t base, int exp) {
  std::int64_t r = 1;
  for (int i = 0; i < exp; ++i) {
    if (r > std::numeric_limits<std::int64_t>::max() / base)
      throw std::overflow_error("ipow overflow");
    r *= base;
  }
  return r;
}

/// Circular distance between two residues mod q.
constexpr int circular_distance(int a, int b, int q) {
  int t = a - b;
  if (t < 0) t = -t;
  t %= q;
  return std::min(t, q - t);
}

/// A word in Z_q^n.
class Word {
 public:
  Word() = default;
  Word(int q, std::vector<int> symbols) : q_(q), symbols_(std::move(symbols)) {
    if (q_ < 2) throw std::invalid_argument("alphabet size must be at least 2");
    if (symbols_.empty()) throw std::invalid_argument("word length must be at least 1");
    for (int s : symbols_)
      if (s < 0 || s >= q_)
        throw std::invalid_argument("symbol " + std::to_string(s) + " outside Z_" +
                                    std::to_string(q_));
  }

  static Word zero(int q, int n) { return Word(q, std::vector<int>(n, 0)); }

  /// Word whose base-q digits (most significant first) spell `index`.
  static Word from_index(int q, int n, std::int64_t index) {
    std::vector<int> s(n);
    for (int i = n - 1; i >= 0; --i) {
      s[i] = static_cast<int>(index % q);
      index /= q;
    }
    return Word(q, std::move(s));
  }

  std::int64_t index() const {
    std::int64_t r = 0;
    for (int s : symbols_) r = r * q_ + s;
    return r;
  }

  int q() const { return q_; }
  int length() const { return static_cast<int>(symbols_.size()); }
  int operator[](int i) const { return symbols_[i]; }
  std::span<const int> symbols() const { return symbols_; }

  friend bool operator==(const Word&, const Word&) = default;
  friend auto operator<=>(const Word& a, const Word& b) {
    if (auto c = a.q_ <=> b.q_; c != 0) return c;
    return a.symbols_ <=> b.symbols_;
  }

  friend std::ostream& operator<<(std::ostream& os, const Word& w) {
    for (int s : w.symbols_) os << s << (w.q_ > 10 ? "," : "");
    return os;
  }

 private:
  int q_ = 2;
  std::vector<int> symbols_;
};

/// Minimum distance of a code; a code with at most one word has infinite
/// minimum distance, kept as its own state rather than a sentinel.
class Distance {
 public:
  static constexpr Distance infinity() { return Distance(); }
  constexpr explicit Distance(int value) : value_(value), finite_(true) {}

  constexpr bool is_infinite() const { return !finite_; }
  int value() const {
    if (!finite_) throw std::logic_error("infinite distance has no value");
    return value_;
  }
  /// True iff the distance is >= d (always true when infinite).
  constexpr bool at_least(int d) const { return !finite_ || value_ >= d; }

  friend constexpr bool operator==(const Distance&, const Distance&) = default;
  friend constexpr std::strong_ordering operator<=>(const Distance& a, const Distance& b) {
    if (a.finite_ != b.finite_) return a.finite_ ? std::strong_ordering::less
                                                 : std::strong_ordering::greater;
    return a.value_ <=> b.value_;
  }
  friend std::ostream& operator<<(std::ostream& os, const Distance& d) {
    if (d.is_infinite()) return os << "inf";
    return os << d.value_;
  }

 private:
  constexpr Distance() = default;
  int value_ = 0;
  bool finite_ = false;
};

namespace detail {
inline void check_compatible(const Word& u, const Word& v) {
  if (u.q() != v.q() || u.length() != v.length())
    throw std::invalid_argument("words must share alphabet size and length");
}
}  // namespace detail

inline int lee_distance(const Word& u, const Word& v) {
  detail::check_compatible(u, v);
  int d = 0;
  for (int i = 0; i < u.length(); ++i) d += circular_distance(u[i], v[i], u.q());
  return d;
}

inline int lee_inf_distance(const Word& u, const Word& v) {
  detail::check_compatible(u, v);
  int d = 0;
  for (int i = 0; i < u.length(); ++i) d = std::max(d, circular_distance(u[i], v[i], u.q()));
  return d;
}

inline int distance(const Word& u, const Word& v, Metric m) {
  return m == Metric::Lee ? lee_distance(u, v) : lee_inf_distance(u, v);
}

/// A set of words sharing q and n, kept sorted and duplicate-free.
class Code {
 public:
  Code() = default;
  explicit Code(std::vector<Word> words) : words_(std::move(words)) {
    for (std::size_t i = 1; i < words_.size(); ++i) detail::check_compatible(words_[0], words_[i]);
    std::sort(words_.begin(), words_.end());
    words_.erase(std::unique(words_.begin(), words_.end()), words_.end());
  }

  std::size_t size() const { return words_.size(); }
  bool empty() const { return words_.empty(); }
  const std::vector<Word>& words() const { return words_; }
  const Word& operator[](std::size_t i) const { return words_[i]; }
  auto begin() const { return words_.begin(); }
  auto end() const { return words_.end(); }

  bool contains(const Word& w) const { return std::binary_search(words_.begin(), words_.end(), w); }

  friend bool operator==(const Code&, const Code&) = default;
  friend auto operator<=>(const Code& a, const Code& b) {
    if (auto c = a.words_.size() <=> b.words_.size(); c != 0) return c;
    return a.words_ <=> b.words_;
  }
  friend std::ostream& operator<<(std::ostream& os, const Code& c) {
    os << '{';
    for (std::size_t i = 0; i < c.words_.size(); ++i) os << (i ? " " : "") << c.words_[i];
    return os << '}';
  }

 private:
  std::vector<Word> words_;
};

inline Distance min_distance(const Code& c, Metric m) {
  if (c.size() <= 1) return Distance::infinity();
  int best = std::numeric_limits<int>::max();
  for (std::size_t i = 0; i < c.size(); ++i)
    for (std::size_t j = i + 1; j < c.size(); ++j) best = std::min(best, distance(c[i], c[j], m));
  return Distance(best);
}

}  // namespace leesdp
