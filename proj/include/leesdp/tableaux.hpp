#pragma once

/// \file tableaux.hpp
/// \brief Partitions, semistandard Young tableaux and the bishapes indexing
/// the blocks of the reduced programs.

#include <algorithm>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace leesdp {

class Partition {
 public:
  Partition() = default;
  explicit Partition(std::vector<int> parts) : parts_(std::move(parts)) {
    for (std::size_t i = 0; i < parts_.size(); ++i) {
      if (parts_[i] <= 0) throw std::invalid_argument("partition parts must be positive");
      if (i && parts_[i] > parts_[i - 1]) throw std::invalid_argument("partition parts must be weakly decreasing");
    }
  }

  int height() const { return static_cast<int>(parts_.size()); }
  int size() const {
    int s = 0;
    for (int p : parts_) s += p;
    return s;
  }
  bool empty() const { return parts_.empty(); }
  int operator[](int i) const { return parts_[i]; }
  const std::vector<int>& parts() const { return parts_; }

  /// Column lengths (the conjugate partition).
  std::vector<int> columns() const {
    std::vector<int> c(parts_.empty() ? 0 : parts_[0], 0);
    for (int p : parts_)
      for (int j = 0; j < p; ++j) ++c[j];
    return c;
  }

  friend bool operator==(const Partition&, const Partition&) = default;
  friend auto operator<=>(const Partition&, const Partition&) = default;
  friend std::ostream& operator<<(std::ostream& os, const Partition& p) {
    os << '(';
    for (int i = 0; i < p.height(); ++i) os << (i ? "," : "") << p.parts_[i];
    return os << ')';
  }

 private:
  std::vector<int> parts_;
};

/// All partitions of n in decreasing lexicographic order, (n) first.
inline std::vector<Partition> partitions(int n, int max_height = 1 << 30) {
  std::vector<Partition> out;
  if (n < 0) return out;
  std::vector<int> cur;
  auto rec = [&](auto&& self, int rest, int cap) -> void {
    if (rest == 0) {
      out.emplace_back(cur);
      return;
    }
    if (static_cast<int>(cur.size()) == max_height) return;
    for (int p = std::min(rest, cap); p >= 1; --p) {
      cur.push_back(p);
      self(self, rest - p, p);
      cur.pop_back();
    }
  };
  rec(rec, n, n);
  return out;
}

/// Filling of a Young shape with entries in 1..m, stored row by row.
class Tableau {
 public:
  Tableau() = default;
  Tableau(Partition shape, std::vector<std::vector<int>> rows) : shape_(std::move(shape)), rows_(std::move(rows)) {
    if (static_cast<int>(rows_.size()) != shape_.height()) throw std::invalid_argument("tableau rows do not match shape");
    for (int i = 0; i < shape_.height(); ++i)
      if (static_cast<int>(rows_[i].size()) != shape_[i]) throw std::invalid_argument("tableau row length does not match shape");
  }

  const Partition& shape() const { return shape_; }
  const std::vector<std::vector<int>>& rows() const { return rows_; }
  int at(int r, int c) const { return rows_[r][c]; }

  /// Rows weakly increase, columns strictly increase, entries in 1..m.
  bool is_semistandard(int m) const {
    for (int r = 0; r < shape_.height(); ++r)
      for (int c = 0; c < shape_[r]; ++c) {
        int v = rows_[r][c];
        if (v < 1 || v > m) return false;
        if (c && rows_[r][c - 1] > v) return false;
        if (r && rows_[r - 1][c] >= v) return false;
      }
    return true;
  }

  friend bool operator==(const Tableau&, const Tableau&) = default;
  friend auto operator<=>(const Tableau& a, const Tableau& b) {
    if (auto c = a.shape_ <=> b.shape_; c != 0) return c;
    return a.rows_ <=> b.rows_;
  }
  friend std::ostream& operator<<(std::ostream& os, const Tableau& t) {
    for (int r = 0; r < t.shape_.height(); ++r) {
      if (r) os << '/';
      for (int v : t.rows_[r]) os << v;
    }
    return os;
  }

 private:
  Partition shape_;
  std::vector<std::vector<int>> rows_;
};

/// T_{lambda,m}, in lexicographic order of the row-concatenated entries.
inline std::vector<Tableau> semistandard_tableaux(const Partition& shape, int m) {
  std::vector<Tableau> out;
  if (shape.height() > m) return out;
  std::vector<std::vector<int>> rows(shape.height());
  for (int r = 0; r < shape.height(); ++r) rows[r].assign(shape[r], 0);
  auto rec = [&](auto&& self, int r, int c) -> void {
    if (r == shape.height()) {
      out.emplace_back(shape, rows);
      return;
    }
    if (c == shape[r]) {
      self(self, r + 1, 0);
      return;
    }
    int lo = 1;
    if (c) lo = std::max(lo, rows[r][c - 1]);
    if (r) lo = std::max(lo, rows[r - 1][c] + 1);
    // Leave room for the strictly increasing cells below.
    int below = 0;
    for (int rr = r + 1; rr < shape.height() && shape[rr] > c; ++rr) ++below;
    for (int v = lo; v <= m - below; ++v) {
      rows[r][c] = v;
      self(self, r, c + 1);
    }
  };
  rec(rec, 0, 0);
  return out;
}

/// Every distinct arrangement of each row's entries; the product over rows
/// is the row-equivalence class of a tableau.
inline std::vector<std::vector<std::vector<int>>> row_arrangements(const Tableau& t) {
  std::vector<std::vector<std::vector<int>>> per_row;
  for (const auto& row : t.rows()) {
    std::vector<int> r = row;
    std::sort(r.begin(), r.end());
    std::vector<std::vector<int>> arr;
    do arr.push_back(r);
    while (std::next_permutation(r.begin(), r.end()));
    per_row.push_back(std::move(arr));
  }
  return per_row;
}

/// A pair of partitions (lambda1 |- n1, lambda2 |- n2), n1 + n2 = n.
struct BiShape {
  Partition lambda1, lambda2;

  friend bool operator==(const BiShape&, const BiShape&) = default;
  friend auto operator<=>(const BiShape&, const BiShape&) = default;
  std::string label() const {
    auto p = [](const Partition& l) {
      std::string s = "(";
      for (int i = 0; i < l.height(); ++i) s += (i ? "," : "") + std::to_string(l[i]);
      return s + ")";
    };
    return p(lambda1) + p(lambda2);
  }
  friend std::ostream& operator<<(std::ostream& os, const BiShape& b) { return os << b.label(); }
};

/// Element of W_lambda = T_{lambda1,m1} x T_{lambda2,m2}.
struct TableauPair {
  Tableau t1, t2;
  friend bool operator==(const TableauPair&, const TableauPair&) = default;
  friend auto operator<=>(const TableauPair&, const TableauPair&) = default;
  friend std::ostream& operator<<(std::ostream& os, const TableauPair& p) {
    return os << '[' << p.t1 << '|' << p.t2 << ']';
  }
};

/// Bishapes with nonempty W_lambda for heights capped by m1 and m2;
/// n1 runs from n down to 0.
inline std::vector<BiShape> enumerate_bishapes(int n, int m1, int m2) {
  std::vector<BiShape> out;
  for (int n1 = n; n1 >= 0; --n1)
    for (const auto& l1 : partitions(n1, m1))
      for (const auto& l2 : partitions(n - n1, m2)) out.push_back({l1, l2});
  return out;
}

/// W_lambda in lexicographic order.
inline std::vector<TableauPair> tableau_pairs(const BiShape& bs, int m1, int m2) {
  std::vector<TableauPair> out;
  auto a = semistandard_tableaux(bs.lambda1, m1);
  auto b = semistandard_tableaux(bs.lambda2, m2);
  for (const auto& x : a)
    for (const auto& y : b) out.push_back({x, y});
  return out;
}

}  // namespace leesdp
