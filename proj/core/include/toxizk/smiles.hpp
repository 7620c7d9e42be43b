// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace toxizk::smiles {

inline constexpr std::size_t kMaxLength = 10'000;

enum class TokenKind {
  kOrganicAtom,
  kBracketAtom,
  kBond,
  kRingBondDigit,
  kBranchOpen,
  kBranchClose,
  kDot,
};

const char* to_string(TokenKind kind);

struct Token {
  TokenKind kind;
  std::string text;
  std::size_t position;  // byte offset into the input

  bool operator==(const Token&) const = default;
};

struct Issue {
  std::size_t position;
  std::string message;

  bool operator==(const Issue&) const = default;
};

/// Either the complete token stream or the tokens read before the first
/// lexical error.
struct Tokenization {
  std::vector<Token> tokens;
  std::optional<Issue> error;

  bool ok() const { return !error.has_value(); }
};

/// Lexes organic-subset atoms, bracket atoms, bonds, ring-closure digits
/// (including %nn), branches and dots. Tokenisation is context-free: "C((("
/// lexes cleanly and is rejected later by validate().
Tokenization tokenize(std::string_view smiles);

struct ValidationReport {
  bool valid = false;
  std::vector<Issue> errors;
  // Accepted constructs worth flagging (wildcard atoms, chirality marks).
  std::vector<Issue> warnings;
};

/// Grammar-level check: tokens parse, branches balance, ring closures pair
/// up, and no bond dangles at the end of the string or before ')'.
/// No valence or aromaticity perception.
ValidationReport validate(std::string_view smiles);

}  // namespace toxizk::smiles
