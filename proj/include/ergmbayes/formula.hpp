#pragma once

#include <cctype>
#include <stdexcept>
#include <string>

#include "ergmbayes/model.hpp"

namespace ergmbayes {

class FormulaError : public std::runtime_error {
 public:
  FormulaError(const std::string& msg, std::size_t position)
      : std::runtime_error("formula:" + std::to_string(position + 1) + ": " + msg),
        position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// Recursive-descent parser for model formulas:
///
///   formula := term ('+' term)*
///   term    := ident ('(' args ')')?
///
/// Terms: edges, triangle, nodematch(attr), gwdegree(decay), gwesp(decay),
/// kstar(k). Attribute names may be bare identifiers or quoted; gw-terms
/// accept and ignore a trailing ", fixed = TRUE" (fixed decay is the only
/// supported mode). Whitespace never matters.
class FormulaParser {
 public:
  explicit FormulaParser(std::string text) : text_(std::move(text)) {}

  ModelSpec parse() {
    ModelSpec spec;
    skip_space();
    if (at_end()) throw error("empty formula");
    spec.terms.push_back(parse_term());
    skip_space();
    while (!at_end()) {
      expect('+');
      spec.terms.push_back(parse_term());
      skip_space();
    }
    for (std::size_t a = 0; a < spec.terms.size(); ++a)
      for (std::size_t b = a + 1; b < spec.terms.size(); ++b)
        if (spec.terms[a] == spec.terms[b])
          throw error("duplicate term '" + spec.terms[a].name() + "'");
    spec.validate();
    return spec;
  }

 private:
  ModelTerm parse_term() {
    skip_space();
    const std::size_t start = pos_;
    const std::string ident = parse_ident("term name");
    skip_space();
    const bool has_args = !at_end() && peek() == '(';

    if (ident == "edges" || ident == "triangle") {
      if (has_args) throw error("term '" + ident + "' takes no arguments");
      return ident == "edges" ? ModelTerm::edges() : ModelTerm::triangle();
    }
    if (ident == "nodematch") {
      expect('(');
      skip_space();
      std::string attr = (peek() == '\'' || peek() == '"') ? parse_quoted()
                                                           : parse_ident("attribute name");
      skip_space();
      expect(')');
      return ModelTerm::nodematch(std::move(attr));
    }
    if (ident == "gwdegree" || ident == "gwesp") {
      expect('(');
      const double decay = parse_number();
      skip_space();
      if (!at_end() && peek() == ',') {
        ++pos_;
        parse_fixed_true();
      }
      skip_space();
      expect(')');
      return ident == "gwdegree" ? ModelTerm::gwdegree(decay) : ModelTerm::gwesp(decay);
    }
    if (ident == "kstar") {
      expect('(');
      const double value = parse_number();
      skip_space();
      expect(')');
      const int k = static_cast<int>(value);
      if (value != static_cast<double>(k) || k < 2)
        throw error("kstar order must be an integer >= 2");
      return ModelTerm::kstar(k);
    }
    pos_ = start;
    throw error("unknown term '" + ident + "'");
  }

  void parse_fixed_true() {
    skip_space();
    if (!match_ident_ci("fixed")) throw error("expected 'fixed = TRUE'");
    skip_space();
    expect('=');
    skip_space();
    if (!match_ident_ci("true"))
      throw error("only fixed decays are supported; expected 'fixed = TRUE'");
  }

  std::string parse_ident(const char* what) {
    skip_space();
    if (at_end() || !(std::isalpha(static_cast<unsigned char>(peek())) || peek() == '_'))
      throw error(std::string("expected ") + what);
    std::size_t end = pos_;
    while (end < text_.size()) {
      const char c = text_[end];
      if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.')
        ++end;
      else
        break;
    }
    std::string ident = text_.substr(pos_, end - pos_);
    pos_ = end;
    return ident;
  }

  bool match_ident_ci(const std::string& word) {
    const std::size_t save = pos_;
    std::string ident;
    try {
      ident = parse_ident("identifier");
    } catch (const FormulaError&) {
      pos_ = save;
      return false;
    }
    if (ident.size() != word.size()) {
      pos_ = save;
      return false;
    }
    for (std::size_t c = 0; c < word.size(); ++c)
      if (std::tolower(static_cast<unsigned char>(ident[c])) != word[c]) {
        pos_ = save;
        return false;
      }
    return true;
  }

  std::string parse_quoted() {
    const char quote = peek();
    ++pos_;
    std::string value;
    while (!at_end() && peek() != quote) value.push_back(text_[pos_++]);
    if (at_end()) throw error("unterminated quote");
    ++pos_;
    if (value.empty()) throw error("empty attribute name");
    return value;
  }

  double parse_number() {
    skip_space();
    const std::size_t start = pos_;
    std::size_t end = pos_;
    auto digit = [&](std::size_t p) {
      return p < text_.size() && std::isdigit(static_cast<unsigned char>(text_[p]));
    };
    if (end < text_.size() && (text_[end] == '+' || text_[end] == '-')) ++end;
    while (digit(end)) ++end;
    if (end < text_.size() && text_[end] == '.') {
      ++end;
      while (digit(end)) ++end;
    }
    if (end < text_.size() && (text_[end] == 'e' || text_[end] == 'E')) {
      std::size_t exp = end + 1;
      if (exp < text_.size() && (text_[exp] == '+' || text_[exp] == '-')) ++exp;
      if (digit(exp)) {
        end = exp;
        while (digit(end)) ++end;
      }
    }
    if (end == start) throw error("expected a number");
    const std::string token = text_.substr(start, end - start);
    char* tail = nullptr;
    const double value = std::strtod(token.c_str(), &tail);
    if (tail == nullptr || *tail != '\0') throw error("invalid number '" + token + "'");
    pos_ = end;
    return value;
  }

  void expect(char c) {
    skip_space();
    if (at_end() || peek() != c)
      throw error(std::string("expected '") + c + "'");
    ++pos_;
  }

  void skip_space() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }

  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }
  FormulaError error(const std::string& msg) const { return FormulaError(msg, pos_); }

  std::string text_;
  std::size_t pos_ = 0;
};

inline ModelSpec parse_formula(const std::string& text) { return FormulaParser(text).parse(); }

/// Canonical text form; parse_formula(render_formula(spec)) == spec.
inline std::string render_formula(const ModelSpec& spec) {
  std::string out;
  for (std::size_t t = 0; t < spec.terms.size(); ++t) {
    if (t > 0) out += " + ";
    out += spec.terms[t].name();
  }
  return out;
}

}  // namespace ergmbayes
