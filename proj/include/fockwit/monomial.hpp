// Copyright 2026 The fockwit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <cctype>
#include <compare>
#include <complex>
#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fockwit/error.hpp"
#include "fockwit/fock_state.hpp"

namespace fockwit {

/// (a^dagger)^creation a^annihilation acting on one mode.
struct ModePowers {
  int creation = 0;
  int annihilation = 0;

  auto operator<=>(const ModePowers&) const = default;
};

/// Product over modes of normal-ordered single-mode powers.
class OperatorMonomial {
 public:
  OperatorMonomial() = default;
  explicit OperatorMonomial(std::size_t mode_count) : powers_(mode_count) {}

  explicit OperatorMonomial(std::vector<ModePowers> powers) : powers_(std::move(powers)) {
    for (const auto& p : powers_) {
      if (p.creation < 0 || p.annihilation < 0) {
        throw Error(ErrorKind::InvalidParameter, "operator powers must be non-negative");
      }
    }
  }

  static OperatorMonomial identity(std::size_t mode_count) { return OperatorMonomial(mode_count); }

  /// N_k = a_k^dagger a_k.
  static OperatorMonomial number(std::size_t mode_count, std::size_t mode) {
    OperatorMonomial m(mode_count);
    m.powers_.at(mode) = {1, 1};
    return m;
  }

  std::size_t mode_count() const { return powers_.size(); }
  const ModePowers& operator[](std::size_t mode) const { return powers_[mode]; }
  const std::vector<ModePowers>& powers() const { return powers_; }

  OperatorMonomial& set(std::size_t mode, int creation, int annihilation) {
    powers_.at(mode) = ModePowers{creation, annihilation};
    return *this;
  }

  int max_creation_power() const {
    int out = 0;
    for (const auto& p : powers_) out = std::max(out, p.creation);
    return out;
  }

  bool is_identity() const {
    return std::all_of(powers_.begin(), powers_.end(), [](const ModePowers& p) { return p == ModePowers{}; });
  }

  OperatorMonomial dagger() const {
    OperatorMonomial out(powers_.size());
    for (std::size_t k = 0; k < powers_.size(); ++k) out.powers_[k] = {powers_[k].annihilation, powers_[k].creation};
    return out;
  }

  auto operator<=>(const OperatorMonomial&) const = default;

 private:
  std::vector<ModePowers> powers_;
};

namespace detail {

inline double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double out = 1.0;
  for (int j = 1; j <= k; ++j) out = out * (n - k + j) / j;
  return out;
}

inline double factorial(int n) {
  double out = 1.0;
  for (int j = 2; j <= n; ++j) out *= j;
  return out;
}

/// Normal-ordered expansion of (a^dag)^p1 a^q1 (a^dag)^p2 a^q2 on one mode.
/// Moving a^q1 past (a^dag)^p2 with [a, a^dag] = 1 leaves k contractions
/// with weight C(q1,k) C(p2,k) k!.
inline std::vector<std::pair<double, ModePowers>> normal_ordered_product(const ModePowers& left,
                                                                         const ModePowers& right) {
  std::vector<std::pair<double, ModePowers>> out;
  const int contractions = std::min(left.annihilation, right.creation);
  for (int k = 0; k <= contractions; ++k) {
    const double weight = binomial(left.annihilation, k) * binomial(right.creation, k) * factorial(k);
    out.emplace_back(weight, ModePowers{left.creation + right.creation - k, left.annihilation + right.annihilation - k});
  }
  return out;
}

}  // namespace detail

/// Linear combination of normal-ordered monomials on a fixed number of modes.
class OperatorPolynomial {
 public:
  using Terms = std::map<OperatorMonomial, Complex>;

  OperatorPolynomial() = default;
  explicit OperatorPolynomial(std::size_t mode_count) : mode_count_(mode_count) {}

  OperatorPolynomial(std::size_t mode_count, std::initializer_list<std::pair<Complex, OperatorMonomial>> terms)
      : mode_count_(mode_count) {
    for (const auto& [c, m] : terms) add(c, m);
  }

  std::size_t mode_count() const { return mode_count_; }
  const Terms& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

  OperatorPolynomial& add(Complex coefficient, const OperatorMonomial& monomial) {
    if (monomial.mode_count() != mode_count_) {
      throw Error(ErrorKind::WrongArity, "monomial mode count does not match the polynomial");
    }
    auto [it, inserted] = terms_.try_emplace(monomial, coefficient);
    if (!inserted) it->second += coefficient;
    if (it->second == Complex{}) terms_.erase(it);
    return *this;
  }

  int max_creation_power() const {
    int out = 0;
    for (const auto& [m, c] : terms_) out = std::max(out, m.max_creation_power());
    return out;
  }

  OperatorPolynomial dagger() const {
    OperatorPolynomial out(mode_count_);
    for (const auto& [m, c] : terms_) out.add(std::conj(c), m.dagger());
    return out;
  }

  friend OperatorPolynomial operator+(const OperatorPolynomial& a, const OperatorPolynomial& b) {
    OperatorPolynomial out = a;
    for (const auto& [m, c] : b.terms_) out.add(c, m);
    return out;
  }

  friend OperatorPolynomial operator*(Complex s, const OperatorPolynomial& p) {
    OperatorPolynomial out(p.mode_count_);
    for (const auto& [m, c] : p.terms_) out.add(s * c, m);
    return out;
  }

  /// Product re-expressed in normal order, mode by mode.
  friend OperatorPolynomial operator*(const OperatorPolynomial& a, const OperatorPolynomial& b) {
    if (a.mode_count_ != b.mode_count_) throw Error(ErrorKind::WrongArity, "mode counts differ");
    OperatorPolynomial out(a.mode_count_);
    for (const auto& [ma, ca] : a.terms_) {
      for (const auto& [mb, cb] : b.terms_) {
        std::vector<std::pair<double, std::vector<ModePowers>>> partial{{1.0, {}}};
        for (std::size_t k = 0; k < a.mode_count_; ++k) {
          std::vector<std::pair<double, std::vector<ModePowers>>> next;
          for (const auto& [w, prefix] : partial) {
            for (const auto& [wk, pk] : detail::normal_ordered_product(ma[k], mb[k])) {
              auto powers = prefix;
              powers.push_back(pk);
              next.emplace_back(w * wk, std::move(powers));
            }
          }
          partial = std::move(next);
        }
        for (auto& [w, powers] : partial) out.add(ca * cb * w, OperatorMonomial(std::move(powers)));
      }
    }
    return out;
  }

 private:
  std::size_t mode_count_ = 0;
  Terms terms_;
};

/// Operator polynomial that equals its own adjoint term by term.
class HermitianCombination {
 public:
  explicit HermitianCombination(OperatorPolynomial polynomial, std::string name = {})
      : polynomial_(std::move(polynomial)), name_(std::move(name)) {
    const auto adjoint = polynomial_.dagger();
    for (const auto& [m, c] : polynomial_.terms()) {
      auto it = adjoint.terms().find(m);
      const Complex partner = it == adjoint.terms().end() ? Complex{} : it->second;
      if (std::abs(partner - c) > 1e-12 * std::max(1.0, std::abs(c))) {
        throw Error(ErrorKind::NotHermitian, "combination is not self-adjoint" + (name_.empty() ? "" : " (" + name_ + ")"));
      }
    }
  }

  const OperatorPolynomial& polynomial() const { return polynomial_; }
  const std::string& name() const { return name_; }
  std::size_t mode_count() const { return polynomial_.mode_count(); }

  OperatorPolynomial squared() const { return polynomial_ * polynomial_; }

 private:
  OperatorPolynomial polynomial_;
  std::string name_;
};

// Monomial text syntax: factors "<x>" or "<x>d" optionally followed by
// "^<power>", where <x> is the mode letter ('a' is mode 0, 'b' mode 1, ...)
// and the trailing 'd' marks a creation operator. Factors are separated by
// whitespace or '*'; '|' may separate modes for readability; "1" is the
// identity. Within a mode every creation factor must precede every
// annihilation factor. Example: "ad^1 a^1 | bd^1 b^1" is N_a N_b.

inline OperatorMonomial parse_monomial(std::string_view text, std::size_t mode_count) {
  std::vector<ModePowers> powers(mode_count);
  std::vector<bool> seen_annihilation(mode_count, false);
  std::size_t pos = 0;
  auto fail = [&](const std::string& why) {
    throw Error(ErrorKind::ParseError, "monomial \"" + std::string(text) + "\": " + why);
  };
  while (pos < text.size()) {
    const char ch = text[pos];
    if (std::isspace(static_cast<unsigned char>(ch)) || ch == '*' || ch == '|') {
      ++pos;
      continue;
    }
    if (ch == '1') {
      ++pos;
      continue;
    }
    if (ch < 'a' || ch > 'z') fail(std::string("unexpected character '") + ch + "'");
    const std::size_t mode = static_cast<std::size_t>(ch - 'a');
    if (mode >= mode_count) fail(std::string("mode '") + ch + "' out of range");
    ++pos;
    bool creation = false;
    if (pos < text.size() && text[pos] == 'd') {
      creation = true;
      ++pos;
    }
    int power = 1;
    if (pos < text.size() && text[pos] == '^') {
      ++pos;
      const std::size_t start = pos;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
      if (start == pos) fail("missing exponent after '^'");
      power = std::stoi(std::string(text.substr(start, pos - start)));
    }
    if (creation) {
      if (seen_annihilation[mode] && power > 0) fail("creation after annihilation is not normal ordered");
      powers[mode].creation += power;
    } else {
      if (power > 0) seen_annihilation[mode] = true;
      powers[mode].annihilation += power;
    }
  }
  return OperatorMonomial(std::move(powers));
}

inline std::string format_monomial(const OperatorMonomial& m) {
  std::string out;
  for (std::size_t k = 0; k < m.mode_count(); ++k) {
    if (k > 0) out += " | ";
    const char letter = static_cast<char>('a' + k);
    std::string block;
    if (m[k].creation > 0) block += std::string(1, letter) + "d^" + std::to_string(m[k].creation);
    if (m[k].annihilation > 0) {
      if (!block.empty()) block += " ";
      block += std::string(1, letter) + "^" + std::to_string(m[k].annihilation);
    }
    out += block.empty() ? "1" : block;
  }
  return out;
}

}  // namespace fockwit
