#pragma once

/// \file polynomial.hpp
/// \brief Commutative monomials over small variable ids and sparse
/// polynomials with a templated coefficient ring.

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <map>
#include <ostream>
#include <stdexcept>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace leesdp {

/// Exact integer used by the integer routes.
using Integer = boost::multiprecision::cpp_int;

/// Sorted multiset of variable ids (each < 256), degree at most kMaxDegree.
class Monomial {
 public:
  static constexpr int kMaxDegree = 16;

  Monomial() = default;
  Monomial(std::initializer_list<int> vars) {
    for (int v : vars) push(v);
    std::sort(vars_.begin(), vars_.begin() + degree_);
  }
  template <class It>
  static Monomial from_range(It first, It last) {
    Monomial m;
    for (; first != last; ++first) m.push(*first);
    std::sort(m.vars_.begin(), m.vars_.begin() + m.degree_);
    return m;
  }

  int degree() const { return degree_; }
  int operator[](int i) const { return vars_[i]; }
  const std::uint8_t* begin() const { return vars_.data(); }
  const std::uint8_t* end() const { return vars_.data() + degree_; }

  /// Multiplicity of each variable as (var, exponent) pairs.
  std::vector<std::pair<int, int>> exponents() const {
    std::vector<std::pair<int, int>> out;
    for (int i = 0; i < degree_; ++i) {
      if (!out.empty() && out.back().first == vars_[i])
        ++out.back().second;
      else
        out.emplace_back(vars_[i], 1);
    }
    return out;
  }

  friend Monomial operator*(const Monomial& a, const Monomial& b) {
    if (a.degree_ + b.degree_ > kMaxDegree) throw std::length_error("monomial degree too large");
    Monomial r;
    std::merge(a.begin(), a.end(), b.begin(), b.end(), r.vars_.begin());
    r.degree_ = a.degree_ + b.degree_;
    return r;
  }

  friend bool operator==(const Monomial& a, const Monomial& b) {
    return a.degree_ == b.degree_ && std::equal(a.begin(), a.end(), b.begin());
  }
  friend std::strong_ordering operator<=>(const Monomial& a, const Monomial& b) {
    if (auto c = a.degree_ <=> b.degree_; c != 0) return c;
    return std::lexicographical_compare_three_way(a.begin(), a.end(), b.begin(), b.end());
  }

  std::size_t hash() const {
    std::size_t h = static_cast<std::size_t>(degree_) * 0x9e3779b97f4a7c15ULL;
    for (int i = 0; i < degree_; ++i) h = (h ^ vars_[i]) * 0x100000001b3ULL;
    return h;
  }

  friend std::ostream& operator<<(std::ostream& os, const Monomial& m) {
    if (m.degree_ == 0) return os << "1";
    bool first = true;
    for (auto [v, e] : m.exponents()) {
      os << (first ? "" : "*") << 'v' << v;
      if (e > 1) os << '^' << e;
      first = false;
    }
    return os;
  }

 private:
  void push(int v) {
    if (v < 0 || v > 255) throw std::out_of_range("monomial variable id out of range");
    if (degree_ == kMaxDegree) throw std::length_error("monomial degree too large");
    vars_[degree_++] = static_cast<std::uint8_t>(v);
  }

  std::array<std::uint8_t, kMaxDegree> vars_{};
  int degree_ = 0;
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const { return m.hash(); }
};

/// Sparse polynomial; zero coefficients are never stored.
template <class Coeff>
class Polynomial {
 public:
  using Terms = std::map<Monomial, Coeff>;

  Polynomial() = default;
  static Polynomial constant(Coeff c) {
    Polynomial p;
    p.add(Monomial{}, std::move(c));
    return p;
  }
  static Polynomial variable(int v, Coeff c = Coeff(1)) {
    Polynomial p;
    p.add(Monomial{v}, std::move(c));
    return p;
  }

  void add(const Monomial& m, const Coeff& c) {
    if (c == Coeff(0)) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second == Coeff(0)) terms_.erase(it);
    }
  }

  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  const Terms& terms() const { return terms_; }
  auto begin() const { return terms_.begin(); }
  auto end() const { return terms_.end(); }

  Coeff coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Coeff(0) : it->second;
  }

  Polynomial& operator+=(const Polynomial& o) {
    for (const auto& [m, c] : o.terms_) add(m, c);
    return *this;
  }
  Polynomial& operator*=(const Coeff& s) {
    if (s == Coeff(0)) {
      terms_.clear();
      return *this;
    }
    for (auto& [m, c] : terms_) c *= s;
    return *this;
  }
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator*(Polynomial a, const Coeff& s) { return a *= s; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    Polynomial r;
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) r.add(ma * mb, ca * cb);
    return r;
  }

  /// Coefficient conversion, e.g. Integer -> double.
  template <class Other>
  Polynomial<Other> cast() const {
    Polynomial<Other> r;
    for (const auto& [m, c] : terms_) r.add(m, static_cast<Other>(c));
    return r;
  }

  friend bool operator==(const Polynomial&, const Polynomial&) = default;

  friend std::ostream& operator<<(std::ostream& os, const Polynomial& p) {
    if (p.terms_.empty()) return os << "0";
    bool first = true;
    for (const auto& [m, c] : p.terms_) {
      os << (first ? "" : " + ") << c << '*' << m;
      first = false;
    }
    return os;
  }

 private:
  Terms terms_;
};

}  // namespace leesdp
