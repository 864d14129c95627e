#pragma once

#include <compare>
#include <string>
#include <string_view>
#include <vector>

namespace charvar {

// One letter of a word in the surface generators a_1, b_1, ..., a_g, b_g.
// `generator` is 1-based: a_j is 2j-1 and b_j is 2j.
struct Letter {
  int generator = 1;
  int sign = 1;

  static Letter a(int j, int sign = 1) { return {2 * j - 1, sign}; }
  static Letter b(int j, int sign = 1) { return {2 * j, sign}; }

  bool is_a() const { return generator % 2 == 1; }
  // Handle index j of a_j / b_j.
  int handle() const { return (generator + 1) / 2; }
  // 0-based slot in an assignment (A_1, B_1, ..., A_g, B_g).
  int slot() const { return generator - 1; }

  auto operator<=>(const Letter&) const = default;
};

// Element of the free group on the surface generators, kept freely reduced.
class FreeWord {
 public:
  FreeWord() = default;
  explicit FreeWord(std::vector<Letter> letters);

  static FreeWord a(int j, int exponent = 1);
  static FreeWord b(int j, int exponent = 1);
  static FreeWord generator_power(int generator, int exponent);

  // Parses "a1 b1^2 a1^-1" (whitespace optional, "1" for the identity).
  static FreeWord parse(std::string_view text);

  const std::vector<Letter>& letters() const { return letters_; }
  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }

  // Largest generator index used, 0 for the empty word.
  int max_generator() const;

  FreeWord inverse() const;
  FreeWord power(int n) const;
  // w * this * w^-1.
  FreeWord conjugated_by(const FreeWord& w) const;
  // Renumbers generators by adding 2*handle_offset (used by connected sum).
  FreeWord shifted(int handle_offset) const;

  std::string to_string() const;

  friend FreeWord operator*(const FreeWord& lhs, const FreeWord& rhs);
  friend bool operator==(const FreeWord&, const FreeWord&) = default;

 private:
  std::vector<Letter> letters_;
};

}  // namespace charvar
