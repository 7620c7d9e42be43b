// SPDX-License-Identifier: Apache-2.0
#include "toxizk/smiles.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <map>

namespace toxizk::smiles {
namespace {

constexpr std::array<std::string_view, 118> kElements = {
    "H",  "He", "Li", "Be", "B",  "C",  "N",  "O",  "F",  "Ne", "Na", "Mg",
    "Al", "Si", "P",  "S",  "Cl", "Ar", "K",  "Ca", "Sc", "Ti", "V",  "Cr",
    "Mn", "Fe", "Co", "Ni", "Cu", "Zn", "Ga", "Ge", "As", "Se", "Br", "Kr",
    "Rb", "Sr", "Y",  "Zr", "Nb", "Mo", "Tc", "Ru", "Rh", "Pd", "Ag", "Cd",
    "In", "Sn", "Sb", "Te", "I",  "Xe", "Cs", "Ba", "La", "Ce", "Pr", "Nd",
    "Pm", "Sm", "Eu", "Gd", "Tb", "Dy", "Ho", "Er", "Tm", "Yb", "Lu", "Hf",
    "Ta", "W",  "Re", "Os", "Ir", "Pt", "Au", "Hg", "Tl", "Pb", "Bi", "Po",
    "At", "Rn", "Fr", "Ra", "Ac", "Th", "Pa", "U",  "Np", "Pu", "Am", "Cm",
    "Bk", "Cf", "Es", "Fm", "Md", "No", "Lr", "Rf", "Db", "Sg", "Bh", "Hs",
    "Mt", "Ds", "Rg", "Cn", "Nh", "Fl", "Mc", "Lv", "Ts", "Og"};

constexpr std::array<std::string_view, 8> kAromaticBracket = {
    "b", "c", "n", "o", "p", "s", "se", "as"};

bool is_element(std::string_view s) {
  return std::find(kElements.begin(), kElements.end(), s) != kElements.end();
}

bool is_aromatic_bracket(std::string_view s) {
  return std::find(kAromaticBracket.begin(), kAromaticBracket.end(), s) !=
         kAromaticBracket.end();
}

bool is_digit(char c) { return c >= '0' && c <= '9'; }

bool is_bond_char(char c) {
  return c == '-' || c == '=' || c == '#' || c == ':' || c == '/' || c == '\\';
}

// Returns an error message, or empty on success. `body` excludes the brackets.
std::string check_bracket_body(std::string_view body) {
  std::size_t i = 0;
  const auto peek = [&](std::size_t k = 0) -> char {
    return i + k < body.size() ? body[i + k] : '\0';
  };
  std::size_t isotope_digits = 0;
  while (is_digit(peek())) {
    ++i;
    ++isotope_digits;
  }
  if (isotope_digits > 3) return "isotope has too many digits";

  if (peek() == '*') {
    ++i;
  } else if (std::islower(static_cast<unsigned char>(peek()))) {
    if (i + 1 < body.size() && is_aromatic_bracket(body.substr(i, 2))) {
      i += 2;
    } else if (is_aromatic_bracket(body.substr(i, 1))) {
      i += 1;
    } else {
      return "unknown aromatic symbol in bracket atom";
    }
  } else if (std::isupper(static_cast<unsigned char>(peek()))) {
    if (std::islower(static_cast<unsigned char>(peek(1))) &&
        is_element(body.substr(i, 2))) {
      i += 2;
    } else if (is_element(body.substr(i, 1))) {
      i += 1;
    } else {
      return "unknown element symbol in bracket atom";
    }
  } else {
    return "bracket atom lacks an element symbol";
  }

  if (peek() == '@') {
    ++i;
    if (peek() == '@') {
      ++i;
    } else {
      static constexpr std::array<std::string_view, 5> kClasses = {"TH", "AL", "SP",
                                                                   "TB", "OH"};
      for (auto cls : kClasses) {
        if (body.substr(i, 2) == cls) {
          i += 2;
          if (!is_digit(peek())) return "chirality class needs a number";
          while (is_digit(peek())) ++i;
          break;
        }
      }
    }
  }

  if (peek() == 'H') {
    ++i;
    if (is_digit(peek())) ++i;
  }

  if (peek() == '+' || peek() == '-') {
    const char sign = peek();
    ++i;
    if (peek() == sign) {
      ++i;
    } else {
      std::size_t n = 0;
      while (is_digit(peek())) {
        ++i;
        ++n;
      }
      if (n > 2) return "charge magnitude has too many digits";
    }
  }

  if (peek() == ':') {
    ++i;
    if (!is_digit(peek())) return "atom class needs a number";
    while (is_digit(peek())) ++i;
  }

  if (i != body.size()) return "unexpected character in bracket atom";
  return {};
}

}  // namespace

const char* to_string(TokenKind kind) {
  switch (kind) {
    case TokenKind::kOrganicAtom: return "organic_atom";
    case TokenKind::kBracketAtom: return "bracket_atom";
    case TokenKind::kBond: return "bond";
    case TokenKind::kRingBondDigit: return "ring_bond_digit";
    case TokenKind::kBranchOpen: return "branch_open";
    case TokenKind::kBranchClose: return "branch_close";
    case TokenKind::kDot: return "dot";
  }
  return "unknown";
}

Tokenization tokenize(std::string_view s) {
  Tokenization out;
  if (s.empty()) {
    out.error = Issue{0, "empty input"};
    return out;
  }
  if (s.size() > kMaxLength) {
    out.error = Issue{kMaxLength, "input longer than 10000 bytes"};
    return out;
  }
  std::size_t i = 0;
  const auto emit = [&](TokenKind kind, std::size_t len) {
    out.tokens.push_back(Token{kind, std::string(s.substr(i, len)), i});
    i += len;
  };
  while (i < s.size()) {
    const char c = s[i];
    const char next = i + 1 < s.size() ? s[i + 1] : '\0';
    if ((c == 'C' && next == 'l') || (c == 'B' && next == 'r')) {
      emit(TokenKind::kOrganicAtom, 2);
    } else if (std::string_view("BCNOPSFI*bcnops").find(c) != std::string_view::npos) {
      emit(TokenKind::kOrganicAtom, 1);
    } else if (c == '[') {
      const std::size_t close = s.find(']', i + 1);
      if (close == std::string_view::npos) {
        out.error = Issue{i, "unterminated bracket atom"};
        return out;
      }
      const std::size_t nested = s.find('[', i + 1);
      if (nested != std::string_view::npos && nested < close) {
        out.error = Issue{i, "unterminated bracket atom"};
        return out;
      }
      const std::string msg = check_bracket_body(s.substr(i + 1, close - i - 1));
      if (!msg.empty()) {
        out.error = Issue{i, msg};
        return out;
      }
      emit(TokenKind::kBracketAtom, close - i + 1);
    } else if (is_bond_char(c)) {
      emit(TokenKind::kBond, 1);
    } else if (is_digit(c)) {
      emit(TokenKind::kRingBondDigit, 1);
    } else if (c == '%') {
      if (!is_digit(next) || i + 2 >= s.size() || !is_digit(s[i + 2])) {
        out.error = Issue{i, "'%' must be followed by two digits"};
        return out;
      }
      emit(TokenKind::kRingBondDigit, 3);
    } else if (c == '(') {
      emit(TokenKind::kBranchOpen, 1);
    } else if (c == ')') {
      emit(TokenKind::kBranchClose, 1);
    } else if (c == '.') {
      emit(TokenKind::kDot, 1);
    } else {
      out.error = Issue{i, std::string("unknown character '") + c + "'"};
      return out;
    }
  }
  return out;
}

ValidationReport validate(std::string_view s) {
  ValidationReport report;
  const Tokenization lex = tokenize(s);
  if (!lex.ok()) {
    report.errors.push_back(*lex.error);
    return report;
  }

  enum class Prev { kStart, kAtom, kBond, kRing, kOpen, kClose, kDot };
  Prev prev = Prev::kStart;
  // Kind of the token before a bond, so "C(C)=1" can be told apart from "C=1".
  Prev before_bond = Prev::kStart;
  std::vector<std::size_t> open_branches;
  std::map<std::string, std::pair<std::size_t, std::size_t>> open_rings;  // label -> (atom index, position)
  std::size_t atom_index = 0;
  const auto fail = [&](std::size_t pos, std::string msg) {
    report.errors.push_back(Issue{pos, std::move(msg)});
  };
  const auto after_atom_like = [](Prev p) {
    return p == Prev::kAtom || p == Prev::kRing || p == Prev::kClose;
  };

  for (const Token& tok : lex.tokens) {
    switch (tok.kind) {
      case TokenKind::kOrganicAtom:
      case TokenKind::kBracketAtom:
        if (tok.text == "*" || tok.text.find('*') != std::string::npos) {
          report.warnings.push_back(Issue{tok.position, "wildcard atom"});
        }
        if (tok.text.find('@') != std::string::npos) {
          report.warnings.push_back(Issue{tok.position, "stereo marker not checked"});
        }
        ++atom_index;
        prev = Prev::kAtom;
        break;
      case TokenKind::kBond:
        if (!(after_atom_like(prev) || prev == Prev::kOpen)) {
          fail(tok.position, "bond '" + tok.text + "' has no preceding atom");
        }
        before_bond = prev;
        prev = Prev::kBond;
        break;
      case TokenKind::kRingBondDigit: {
        const bool ok = prev == Prev::kAtom || prev == Prev::kRing ||
                        (prev == Prev::kBond &&
                         (before_bond == Prev::kAtom || before_bond == Prev::kRing));
        if (!ok) fail(tok.position, "ring closure '" + tok.text + "' must follow an atom");
        auto it = open_rings.find(tok.text);
        if (it == open_rings.end()) {
          open_rings.emplace(tok.text, std::make_pair(atom_index, tok.position));
        } else {
          if (it->second.first == atom_index) {
            fail(tok.position, "ring closure '" + tok.text + "' bonds an atom to itself");
          }
          open_rings.erase(it);
        }
        prev = Prev::kRing;
        break;
      }
      case TokenKind::kBranchOpen:
        if (!after_atom_like(prev)) fail(tok.position, "branch must follow an atom");
        open_branches.push_back(tok.position);
        prev = Prev::kOpen;
        break;
      case TokenKind::kBranchClose:
        if (open_branches.empty()) {
          fail(tok.position, "unmatched ')'");
        } else {
          open_branches.pop_back();
        }
        if (prev == Prev::kBond) {
          fail(tok.position, "dangling bond before ')'");
        } else if (!after_atom_like(prev)) {
          fail(tok.position, "empty branch");
        }
        prev = Prev::kClose;
        break;
      case TokenKind::kDot:
        if (!after_atom_like(prev)) fail(tok.position, "'.' must separate two components");
        prev = Prev::kDot;
        break;
    }
  }

  if (prev == Prev::kBond) {
    fail(s.size(), "dangling bond at end of string");
  } else if (prev == Prev::kDot || prev == Prev::kOpen) {
    fail(s.size(), "unexpected end of string");
  }
  for (std::size_t pos : open_branches) fail(pos, "unmatched '('");
  for (const auto& [label, where] : open_rings) {
    fail(where.second, "unmatched ring closure '" + label + "'");
  }
  std::stable_sort(report.errors.begin(), report.errors.end(),
            [](const Issue& a, const Issue& b) { return a.position < b.position; });
  report.valid = report.errors.empty();
  return report;
}

}  // namespace toxizk::smiles
