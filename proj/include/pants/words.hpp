#pragma once

// Cyclically reduced words in the free group on {a, b}.
//
// Letters are written a, A, b, B with A = a^-1 and B = b^-1. The fixed order
// a < A < b < B defines canonical forms (least rotation) and the enumeration
// order.

#include <boost/multiprecision/cpp_int.hpp>

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pants/errors.hpp"
#include "pants/rng.hpp"

namespace pants {

using BigInt = boost::multiprecision::cpp_int;

enum class Letter : std::uint8_t { a = 0, A = 1, b = 2, B = 3 };

inline constexpr std::array<Letter, 4> kAlphabet{Letter::a, Letter::A, Letter::b, Letter::B};

constexpr Letter inverse(Letter x) noexcept {
  return static_cast<Letter>(static_cast<std::uint8_t>(x) ^ 1u);
}

constexpr std::size_t index_of(Letter x) noexcept { return static_cast<std::size_t>(x); }

constexpr char to_char(Letter x) noexcept {
  constexpr char kChars[] = {'a', 'A', 'b', 'B'};
  return kChars[index_of(x)];
}

constexpr std::optional<Letter> letter_from_char(char c) noexcept {
  switch (c) {
    case 'a': return Letter::a;
    case 'A': return Letter::A;
    case 'b': return Letter::b;
    case 'B': return Letter::B;
    default: return std::nullopt;
  }
}

// Index of the first i with letters[(i+1) mod L] == inverse(letters[i]), or
// nullopt when the sequence is cyclically reduced.
inline std::optional<std::size_t> first_cancellation(std::span<const Letter> letters) noexcept {
  const std::size_t n = letters.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (letters[(i + 1) % n] == inverse(letters[i])) return i;
  }
  return std::nullopt;
}

// Start index of the lexicographically least rotation (smallest such index
// for periodic sequences). Linear time two-pointer scan.
inline std::size_t least_rotation(std::span<const Letter> s) noexcept {
  const std::size_t n = s.size();
  std::size_t i = 0, j = 1, k = 0;
  while (i < n && j < n && k < n) {
    const Letter x = s[(i + k) % n];
    const Letter y = s[(j + k) % n];
    if (x == y) {
      ++k;
      continue;
    }
    if (x > y)
      i += k + 1;
    else
      j += k + 1;
    if (i == j) ++j;
    k = 0;
  }
  return i < j ? i : j;
}

// One concrete rotation of a cyclically reduced word. Only constructible
// through validation, so every instance satisfies the reduction invariant.
class CyclicWord {
 public:
  static CyclicWord validate(std::vector<Letter> letters) {
    if (letters.empty()) throw EmptyWord();
    if (auto bad = first_cancellation(letters)) throw NonReducedWord(*bad);
    return CyclicWord(std::move(letters));
  }

  static CyclicWord parse(std::string_view text) {
    std::vector<Letter> letters;
    letters.reserve(text.size());
    for (std::size_t i = 0; i < text.size(); ++i) {
      auto x = letter_from_char(text[i]);
      if (!x) throw BadLetter(text[i], i);
      letters.push_back(*x);
    }
    return validate(std::move(letters));
  }

  std::size_t size() const noexcept { return letters_.size(); }
  std::span<const Letter> letters() const noexcept { return letters_; }
  Letter operator[](std::size_t i) const noexcept { return letters_[i]; }
  auto begin() const noexcept { return letters_.begin(); }
  auto end() const noexcept { return letters_.end(); }

  std::string str() const {
    std::string out;
    out.reserve(letters_.size());
    for (Letter x : letters_) out.push_back(to_char(x));
    return out;
  }

  // Smallest p dividing L with letters[i] == letters[(i+p) mod L] for all i.
  std::size_t period() const noexcept {
    const std::size_t n = letters_.size();
    for (std::size_t p = 1; p < n; ++p) {
      if (n % p != 0) continue;
      bool ok = true;
      for (std::size_t i = 0; i + p < n && ok; ++i) ok = letters_[i] == letters_[i + p];
      if (ok) return p;
    }
    return n;
  }

  friend bool operator==(const CyclicWord&, const CyclicWord&) = default;
  friend auto operator<=>(const CyclicWord&, const CyclicWord&) = default;

 private:
  explicit CyclicWord(std::vector<Letter> letters) : letters_(std::move(letters)) {}

  friend CyclicWord rotate(const CyclicWord& w, std::size_t k);
  friend CyclicWord inverse(const CyclicWord& w);
  friend CyclicWord power(const CyclicWord& w, std::size_t n);
  friend class ClassEnumerator;
  template <class Rng>
  friend CyclicWord sample_word(std::size_t word_length, Rng& rng);

  std::vector<Letter> letters_;
};

// Rotation by k to the left: result[i] = w[(i+k) mod L].
inline CyclicWord rotate(const CyclicWord& w, std::size_t k) {
  const std::size_t n = w.size();
  std::vector<Letter> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = w[(i + k) % n];
  return CyclicWord(std::move(out));
}

// The inverse group element: reversed order, each letter inverted.
inline CyclicWord inverse(const CyclicWord& w) {
  std::vector<Letter> out(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) out[i] = inverse(w[w.size() - 1 - i]);
  return CyclicWord(std::move(out));
}

inline CyclicWord power(const CyclicWord& w, std::size_t n) {
  if (n == 0) throw InvalidArgument("power of a word needs n >= 1");
  std::vector<Letter> out;
  out.reserve(w.size() * n);
  for (std::size_t r = 0; r < n; ++r) out.insert(out.end(), w.begin(), w.end());
  return CyclicWord(std::move(out));
}

inline CyclicWord canonical_form(const CyclicWord& w) { return rotate(w, least_rotation(w.letters())); }

// ---------------------------------------------------------------------------
// Counting

// Cyclically reduced strings of length L: trace(T^L) = 3^L + 2 + (-1)^L.
inline BigInt count_strings(std::size_t word_length) {
  if (word_length == 0) throw InvalidArgument("word length must be >= 1");
  BigInt r = boost::multiprecision::pow(BigInt(3), static_cast<unsigned>(word_length));
  r += (word_length % 2 == 0) ? 3 : 1;
  return r;
}

namespace detail {

inline std::uint64_t totient(std::uint64_t n) noexcept {
  std::uint64_t result = n;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    while (n % p == 0) n /= p;
    result -= result / p;
  }
  if (n > 1) result -= result / n;
  return result;
}

}  // namespace detail

// Rotation classes (necklaces) via Burnside over the cyclic group:
// (1/L) * sum_{d | L} phi(L/d) * count_strings(d).
inline BigInt count_classes(std::size_t word_length) {
  if (word_length == 0) throw InvalidArgument("word length must be >= 1");
  BigInt sum = 0;
  for (std::size_t d = 1; d <= word_length; ++d) {
    if (word_length % d != 0) continue;
    sum += BigInt(detail::totient(word_length / d)) * count_strings(d);
  }
  return sum / word_length;
}

// ---------------------------------------------------------------------------
// Enumeration

inline constexpr std::size_t kEnumerationGuard = 16;

// Streams every class of word length L exactly once, in canonical form and
// lexicographic order. Traverses all ~3^L reduced strings and keeps those
// that are their own least rotation.
class ClassEnumerator {
 public:
  explicit ClassEnumerator(std::size_t word_length, std::size_t guard = kEnumerationGuard)
      : length_(word_length) {
    if (word_length == 0) throw InvalidArgument("word length must be >= 1");
    if (word_length > guard)
      throw GuardExceeded("enumeration of word length " + std::to_string(word_length) +
                          " exceeds the guard of " + std::to_string(guard));
  }

  std::optional<CyclicWord> next() {
    while (advance()) {
      if (current_.back() == inverse(current_.front())) continue;
      if (least_rotation(current_) != 0) continue;
      return CyclicWord(current_);
    }
    return std::nullopt;
  }

  template <class F>
  void for_each(F&& f) {
    while (auto w = next()) f(*w);
  }

 private:
  static Letter smallest_after(Letter prev) noexcept {
    return prev == Letter::A ? Letter::A : Letter::a;
  }

  void fill_from(std::size_t pos) {
    for (std::size_t i = pos; i < length_; ++i)
      current_[i] = i == 0 ? Letter::a : smallest_after(current_[i - 1]);
  }

  // Next linearly reduced string in lexicographic order.
  bool advance() {
    if (!started_) {
      started_ = true;
      current_.resize(length_);
      fill_from(0);
      return true;
    }
    for (std::size_t p = length_; p-- > 0;) {
      auto v = static_cast<std::uint8_t>(current_[p]);
      for (++v; v < 4; ++v) {
        const auto cand = static_cast<Letter>(v);
        if (p > 0 && cand == inverse(current_[p - 1])) continue;
        current_[p] = cand;
        fill_from(p + 1);
        return true;
      }
    }
    return false;
  }

  std::size_t length_;
  bool started_ = false;
  std::vector<Letter> current_;
};

inline std::vector<CyclicWord> enumerate_classes(std::size_t word_length,
                                                 std::size_t guard = kEnumerationGuard) {
  std::vector<CyclicWord> out;
  ClassEnumerator(word_length, guard).for_each([&](const CyclicWord& w) { out.push_back(w); });
  return out;
}

// ---------------------------------------------------------------------------
// Sampling

// Uniform over cyclically reduced strings of length L: first letter uniform
// over 4, each next uniform over the 3 letters that do not cancel, whole-word
// restart when the last letter cancels the first.
template <class Rng>
CyclicWord sample_word(std::size_t word_length, Rng& rng) {
  if (word_length == 0) throw InvalidArgument("word length must be >= 1");
  std::vector<Letter> letters(word_length);
  for (;;) {
    letters[0] = static_cast<Letter>(uniform_below(rng, 4));
    for (std::size_t i = 1; i < word_length; ++i) {
      const Letter forbidden = inverse(letters[i - 1]);
      auto r = static_cast<std::uint8_t>(uniform_below(rng, 3));
      if (r >= static_cast<std::uint8_t>(forbidden)) ++r;
      letters[i] = static_cast<Letter>(r);
    }
    if (word_length == 1 || letters.back() != inverse(letters.front()))
      return CyclicWord(std::move(letters));
  }
}

}  // namespace pants
