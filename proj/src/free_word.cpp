#include "charvar/free_word.hpp"

#include <cctype>
#include <cstdlib>

#include "charvar/errors.hpp"

namespace charvar {
namespace {

void push_reduced(std::vector<Letter>& out, const Letter& l) {
  if (!out.empty() && out.back().generator == l.generator &&
      out.back().sign == -l.sign) {
    out.pop_back();
  } else {
    out.push_back(l);
  }
}

}  // namespace

FreeWord::FreeWord(std::vector<Letter> letters) {
  letters_.reserve(letters.size());
  for (const Letter& l : letters) {
    if (l.generator < 1) {
      throw MalformedWordError("generator index must be >= 1, got " +
                               std::to_string(l.generator));
    }
    if (l.sign != 1 && l.sign != -1) {
      throw MalformedWordError("letter sign must be +1 or -1");
    }
    push_reduced(letters_, l);
  }
}

FreeWord FreeWord::generator_power(int generator, int exponent) {
  std::vector<Letter> ls;
  const int sign = exponent < 0 ? -1 : 1;
  for (int e = 0; e < std::abs(exponent); ++e) ls.push_back({generator, sign});
  return FreeWord(std::move(ls));
}

FreeWord FreeWord::a(int j, int exponent) {
  return generator_power(2 * j - 1, exponent);
}

FreeWord FreeWord::b(int j, int exponent) {
  return generator_power(2 * j, exponent);
}

FreeWord FreeWord::parse(std::string_view text) {
  std::vector<Letter> ls;
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i])))
      ++i;
  };
  auto read_int = [&](bool allow_sign) {
    std::size_t start = i;
    if (allow_sign && i < text.size() && (text[i] == '-' || text[i] == '+')) ++i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])))
      ++i;
    std::string digits(text.substr(start, i - start));
    if (digits.empty() || digits == "-" || digits == "+") {
      throw MalformedWordError("expected integer at offset " +
                               std::to_string(start) + " in '" +
                               std::string(text) + "'");
    }
    return std::stoi(digits);
  };
  skip_ws();
  if (text.substr(i) == "1") return {};
  while (i < text.size()) {
    const char c = text[i];
    if (c != 'a' && c != 'b') {
      throw MalformedWordError("unexpected character '" + std::string(1, c) +
                               "' in '" + std::string(text) + "'");
    }
    ++i;
    const int j = read_int(false);
    if (j < 1) throw MalformedWordError("handle index must be >= 1");
    int exponent = 1;
    if (i < text.size() && text[i] == '^') {
      ++i;
      exponent = read_int(true);
    }
    const int gen = c == 'a' ? 2 * j - 1 : 2 * j;
    const int sign = exponent < 0 ? -1 : 1;
    for (int e = 0; e < std::abs(exponent); ++e) ls.push_back({gen, sign});
    skip_ws();
  }
  return FreeWord(std::move(ls));
}

int FreeWord::max_generator() const {
  int m = 0;
  for (const Letter& l : letters_) m = std::max(m, l.generator);
  return m;
}

FreeWord FreeWord::inverse() const {
  std::vector<Letter> ls(letters_.rbegin(), letters_.rend());
  for (Letter& l : ls) l.sign = -l.sign;
  return FreeWord(std::move(ls));
}

FreeWord FreeWord::power(int n) const {
  const FreeWord base = n < 0 ? inverse() : *this;
  FreeWord out;
  for (int k = 0; k < std::abs(n); ++k) out = out * base;
  return out;
}

FreeWord FreeWord::conjugated_by(const FreeWord& w) const {
  return w * *this * w.inverse();
}

FreeWord FreeWord::shifted(int handle_offset) const {
  std::vector<Letter> ls = letters_;
  for (Letter& l : ls) l.generator += 2 * handle_offset;
  return FreeWord(std::move(ls));
}

std::string FreeWord::to_string() const {
  if (letters_.empty()) return "1";
  std::string out;
  std::size_t i = 0;
  while (i < letters_.size()) {
    std::size_t run = 1;
    while (i + run < letters_.size() && letters_[i + run] == letters_[i]) ++run;
    const Letter& l = letters_[i];
    if (!out.empty()) out += ' ';
    out += l.is_a() ? 'a' : 'b';
    out += std::to_string(l.handle());
    const int exponent = static_cast<int>(run) * l.sign;
    if (exponent != 1) out += "^" + std::to_string(exponent);
    i += run;
  }
  return out;
}

FreeWord operator*(const FreeWord& lhs, const FreeWord& rhs) {
  FreeWord out = lhs;
  for (const Letter& l : rhs.letters_) push_reduced(out.letters_, l);
  return out;
}

}  // namespace charvar
