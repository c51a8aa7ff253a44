// Copyright 2026 The graphsynth Authors
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

// Hand-written lexer and recursive-descent parser for the schema DSL.

#include "graphsynth/dsl/parser.hpp"

#include <cctype>
#include <charconv>
#include <cstdlib>
#include <set>
#include <sstream>

namespace graphsynth::dsl {

ParseError::ParseError(const std::string& message, Span span)
    : Error(std::to_string(span.line) + ":" + std::to_string(span.column) +
            ": " + message),
      detail_(message),
      span_(span) {}

namespace {

enum class Tok {
  kIdent,
  kWord,
  kNumber,
  kString,
  kLBrace,
  kRBrace,
  kLParen,
  kRParen,
  kColon,
  kEquals,
  kComma,
  kTilde,
  kArrowOne,   // <->
  kArrowMany,  // ->
  kArrowBoth,  // --
  kEnd,
};

std::string_view describe(Tok t) {
  switch (t) {
    case Tok::kIdent:
      return "identifier";
    case Tok::kWord:
      return "literal";
    case Tok::kNumber:
      return "number";
    case Tok::kString:
      return "string";
    case Tok::kLBrace:
      return "'{'";
    case Tok::kRBrace:
      return "'}'";
    case Tok::kLParen:
      return "'('";
    case Tok::kRParen:
      return "')'";
    case Tok::kColon:
      return "':'";
    case Tok::kEquals:
      return "'='";
    case Tok::kComma:
      return "','";
    case Tok::kTilde:
      return "'~'";
    case Tok::kArrowOne:
      return "'<->'";
    case Tok::kArrowMany:
      return "'->'";
    case Tok::kArrowBoth:
      return "'--'";
    case Tok::kEnd:
      return "end of input";
  }
  return "?";
}

struct Token {
  Tok kind = Tok::kEnd;
  std::string text;
  Span span;
};

bool is_ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}
bool is_ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}
bool is_digit(char c) { return std::isdigit(static_cast<unsigned char>(c)); }

bool is_number(std::string_view text) {
  if (text.empty()) return false;
  std::string s(text);
  char* end = nullptr;
  std::strtod(s.c_str(), &end);
  return end == s.c_str() + s.size() &&
         s.find_first_of("xXnN") == std::string::npos;  // no hex/nan/inf
}

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  std::vector<Token> run() {
    std::vector<Token> tokens;
    while (true) {
      skip_space_and_comments();
      if (pos_ >= text_.size()) {
        tokens.push_back({Tok::kEnd, "", here(0)});
        return tokens;
      }
      tokens.push_back(next());
    }
  }

 private:
  Span here(std::size_t length) const {
    return Span{pos_, length, line_, pos_ - line_start_ + 1};
  }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      line_start_ = pos_ + 1;
    }
    ++pos_;
  }

  char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0';
  }

  void skip_space_and_comments() {
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        return;
      }
    }
  }

  Token make(Tok kind, std::size_t length) {
    Token t{kind, std::string(text_.substr(pos_, length)), here(length)};
    for (std::size_t i = 0; i < length; ++i) advance();
    return t;
  }

  // A '-' continues a bare literal only when followed by a literal character,
  // so "Person--Person" still lexes as an arrow.
  bool literal_continues(std::size_t at) const {
    const char c = at < text_.size() ? text_[at] : '\0';
    if (is_ident_char(c) || c == '.' || c == '/') return true;
    if (c == '-') {
      const char n = at + 1 < text_.size() ? text_[at + 1] : '\0';
      return is_ident_char(n);
    }
    return false;
  }

  Token next() {
    const char c = peek();
    switch (c) {
      case '{':
        return make(Tok::kLBrace, 1);
      case '}':
        return make(Tok::kRBrace, 1);
      case '(':
        return make(Tok::kLParen, 1);
      case ')':
        return make(Tok::kRParen, 1);
      case ':':
        return make(Tok::kColon, 1);
      case '=':
        return make(Tok::kEquals, 1);
      case ',':
        return make(Tok::kComma, 1);
      case '~':
        return make(Tok::kTilde, 1);
      case '"':
        return string_literal();
      default:
        break;
    }
    if (c == '<' && peek(1) == '-' && peek(2) == '>') {
      return make(Tok::kArrowOne, 3);
    }
    if (c == '-' && peek(1) == '>') return make(Tok::kArrowMany, 2);
    if (c == '-' && peek(1) == '-') return make(Tok::kArrowBoth, 2);
    if (is_digit(c) || ((c == '-' || c == '+' || c == '.') && is_digit(peek(1)))) {
      std::size_t len = 1;
      while (pos_ + len < text_.size()) {
        const char d = text_[pos_ + len];
        if (is_ident_char(d) || d == '.' || d == ':' || d == '/') {
          ++len;
        } else if ((d == '-' || d == '+') &&
                   pos_ + len + 1 < text_.size() &&
                   is_ident_char(text_[pos_ + len + 1])) {
          ++len;
        } else {
          break;
        }
      }
      const auto text = text_.substr(pos_, len);
      return make(is_number(text) ? Tok::kNumber : Tok::kWord, len);
    }
    if (is_ident_start(c) || c == '.' || c == '/') {
      std::size_t len = 0;
      bool word = false;
      while (pos_ + len < text_.size()) {
        const char d = text_[pos_ + len];
        if (is_ident_char(d)) {
          ++len;
        } else if (literal_continues(pos_ + len) && (d == '.' || d == '/' ||
                                                     d == '-')) {
          word = true;
          ++len;
        } else {
          break;
        }
      }
      if (!is_ident_start(c)) word = true;
      return make(word ? Tok::kWord : Tok::kIdent, len);
    }
    throw ParseError(std::string("unexpected character '") + c + "'",
                     here(1));
  }

  Token string_literal() {
    const Span start = here(1);
    const std::size_t begin = pos_;
    advance();  // opening quote
    std::string value;
    while (true) {
      if (pos_ >= text_.size() || peek() == '\n') {
        throw ParseError("unterminated string literal", start);
      }
      const char c = peek();
      advance();
      if (c == '"') break;
      if (c == '\\') {
        if (pos_ >= text_.size()) {
          throw ParseError("unterminated string literal", start);
        }
        const char e = peek();
        advance();
        switch (e) {
          case 'n':
            value.push_back('\n');
            break;
          case 't':
            value.push_back('\t');
            break;
          case '"':
          case '\\':
            value.push_back(e);
            break;
          default:
            throw ParseError(std::string("unknown escape '\\") + e + "'",
                             start);
        }
      } else {
        value.push_back(c);
      }
    }
    Span span = start;
    span.length = pos_ - begin;
    return Token{Tok::kString, std::move(value), span};
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t line_start_ = 0;
};

Span cover(const Span& from, const Span& to) {
  Span s = from;
  s.length = to.offset + to.length - from.offset;
  return s;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  Schema run() {
    Schema schema;
    while (peek().kind != Tok::kEnd) {
      const Token& t = peek();
      if (t.kind != Tok::kIdent) {
        throw ParseError("expected 'node', 'edge' or 'scale', found " +
                             std::string(describe(t.kind)),
                         t.span);
      }
      if (t.text == "node") {
        auto decl = node_decl();
        declare_type(decl.name, decl.span);
        schema.node_types.push_back(std::move(decl));
      } else if (t.text == "edge") {
        auto decl = edge_decl();
        declare_type(decl.name, decl.span);
        schema.edge_types.push_back(std::move(decl));
      } else if (t.text == "scale") {
        schema.scales.push_back(scale_decl());
      } else {
        throw ParseError("unknown keyword '" + t.text + "'", t.span);
      }
    }
    return schema;
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }

  const Token& take() {
    const Token& t = tokens_[pos_];
    if (t.kind != Tok::kEnd) ++pos_;
    return t;
  }

  bool accept(Tok kind) {
    if (peek().kind != kind) return false;
    take();
    return true;
  }

  const Token& expect(Tok kind, std::string_view what = {}) {
    const Token& t = peek();
    if (t.kind != kind) {
      std::string msg = "expected ";
      msg += what.empty() ? describe(kind) : what;
      msg += ", found ";
      msg += t.kind == Tok::kEnd ? "end of input" : "'" + t.text + "'";
      throw ParseError(msg, t.span);
    }
    return take();
  }

  void expect_keyword(std::string_view keyword) {
    const Token& t = peek();
    if (t.kind != Tok::kIdent || t.text != keyword) {
      throw ParseError("expected '" + std::string(keyword) + "', found " +
                           (t.kind == Tok::kEnd ? "end of input"
                                                : "'" + t.text + "'"),
                       t.span);
    }
    take();
  }

  void declare_type(const std::string& name, const Span& span) {
    if (!type_names_.insert(name).second) {
      throw ParseError("duplicate declaration of type '" + name + "'", span);
    }
  }

  NodeTypeDecl node_decl() {
    const Span start = take().span;
    NodeTypeDecl decl;
    decl.name = expect(Tok::kIdent, "node type name").text;
    expect(Tok::kLBrace);
    std::set<std::string> names;
    while (peek().kind != Tok::kRBrace) {
      auto prop = prop_decl();
      if (!names.insert(prop.name).second) {
        throw ParseError("duplicate declaration of property '" + decl.name +
                             "." + prop.name + "'",
                         prop.span);
      }
      decl.properties.push_back(std::move(prop));
    }
    decl.span = cover(start, take().span);
    return decl;
  }

  PropertyDecl prop_decl() {
    PropertyDecl prop;
    const Token& name = expect(Tok::kIdent, "property name");
    const Span start = name.span;
    prop.name = name.text;
    expect(Tok::kColon);
    const Token& type = expect(Tok::kIdent, "property type");
    const auto value_type = parse_value_type(type.text);
    if (!value_type) {
      throw ParseError("unknown property type '" + type.text +
                           "' (expected string, integer or date)",
                       type.span);
    }
    prop.value_type = *value_type;
    expect(Tok::kEquals);
    prop.generator = gen_call();
    Span end = prop.generator.span;
    if (peek().kind == Tok::kIdent && peek().text == "correlated") {
      take();
      expect(Tok::kLParen);
      do {
        prop.depends_on.push_back(property_ref());
      } while (accept(Tok::kComma));
      end = expect(Tok::kRParen).span;
    }
    prop.span = cover(start, end);
    return prop;
  }

  PropertyRef property_ref() {
    const Token& t = peek();
    if (t.kind == Tok::kIdent) {
      return PropertyRef{RefScope::kSelf, take().text};
    }
    if (t.kind == Tok::kWord) {
      const auto dot = t.text.find('.');
      const std::string scope = t.text.substr(0, dot);
      const std::string rest =
          dot == std::string::npos ? "" : t.text.substr(dot + 1);
      const bool simple = !rest.empty() && is_ident_start(rest[0]) &&
                          rest.find_first_of("./-") == std::string::npos;
      if ((scope == "tail" || scope == "head") && simple) {
        take();
        return PropertyRef{scope == "tail" ? RefScope::kTail : RefScope::kHead,
                           rest};
      }
    }
    throw ParseError("expected property reference (name, tail.name or "
                     "head.name), found '" + t.text + "'",
                     t.span);
  }

  GeneratorBinding gen_call() {
    GeneratorBinding g;
    const Token& name = expect(Tok::kIdent, "generator name");
    const Span start = name.span;
    g.generator_name = name.text;
    expect(Tok::kLParen);
    if (peek().kind != Tok::kRParen) {
      do {
        g.parameters.push_back(gen_arg());
      } while (accept(Tok::kComma));
    }
    g.span = cover(start, expect(Tok::kRParen).span);
    return g;
  }

  GeneratorArg gen_arg() {
    GeneratorArg arg;
    Span start = peek().span;
    if (peek().kind == Tok::kIdent && tokens_[pos_ + 1].kind == Tok::kEquals) {
      arg.key = take().text;
      take();
    }
    const Token& v = peek();
    switch (v.kind) {
      case Tok::kNumber:
        arg.kind = ArgKind::kNumber;
        break;
      case Tok::kString:
        arg.kind = ArgKind::kString;
        break;
      case Tok::kIdent:
      case Tok::kWord:
        arg.kind = ArgKind::kWord;
        break;
      default:
        throw ParseError("expected argument value, found " +
                             (v.kind == Tok::kEnd ? std::string("end of input")
                                                  : "'" + v.text + "'"),
                         v.span);
    }
    arg.text = take().text;
    arg.span = cover(start, tokens_[pos_ - 1].span);
    return arg;
  }

  EdgeTypeDecl edge_decl() {
    const Span start = take().span;
    EdgeTypeDecl decl;
    decl.name = expect(Tok::kIdent, "edge type name").text;
    expect(Tok::kColon);
    decl.tail_type = expect(Tok::kIdent, "tail node type").text;
    const Token& arrow = take();
    switch (arrow.kind) {
      case Tok::kArrowMany:
        decl.cardinality = Cardinality::kOneToMany;
        break;
      case Tok::kArrowBoth:
        decl.cardinality = Cardinality::kManyToMany;
        break;
      case Tok::kArrowOne:
        decl.cardinality = Cardinality::kOneToOne;
        break;
      default:
        throw ParseError("expected '->', '--' or '<->', found '" +
                             arrow.text + "'",
                         arrow.span);
    }
    decl.head_type = expect(Tok::kIdent, "head node type").text;
    expect(Tok::kLBrace);
    expect_keyword("structure");
    expect(Tok::kEquals);
    decl.structure = gen_call();
    if (peek().kind == Tok::kIdent && peek().text == "join" &&
        tokens_[pos_ + 1].kind == Tok::kEquals) {
      const Span join_start = take().span;
      take();
      CorrelationDecl corr;
      corr.tail_property = expect(Tok::kIdent, "property name").text;
      corr.head_property = corr.tail_property;
      if (accept(Tok::kComma)) {
        corr.head_property = expect(Tok::kIdent, "property name").text;
      }
      expect(Tok::kTilde);
      const Token& path = expect(Tok::kString, "distribution file string");
      corr.distribution_path = path.text;
      corr.span = cover(join_start, path.span);
      decl.correlation = std::move(corr);
    }
    std::set<std::string> names;
    while (peek().kind != Tok::kRBrace) {
      auto prop = prop_decl();
      if (!names.insert(prop.name).second) {
        throw ParseError("duplicate declaration of property '" + decl.name +
                             "." + prop.name + "'",
                         prop.span);
      }
      decl.properties.push_back(std::move(prop));
    }
    decl.span = cover(start, take().span);
    return decl;
  }

  ScaleDirective scale_decl() {
    const Span start = take().span;
    ScaleDirective scale;
    scale.target = expect(Tok::kIdent, "scale target").text;
    expect(Tok::kEquals);
    const Token& count = peek();
    std::uint64_t value = 0;
    const char* end = count.text.data() + count.text.size();
    auto [ptr, ec] = std::from_chars(count.text.data(), end, value);
    if (count.kind != Tok::kNumber || ec != std::errc() || ptr != end) {
      throw ParseError("expected non-negative integer scale, found '" +
                           count.text + "'",
                       count.span);
    }
    take();
    scale.count = value;
    scale.span = cover(start, count.span);
    return scale;
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  std::set<std::string> type_names_;
};

std::string quote(std::string_view text) {
  std::string out = "\"";
  for (const char c : text) {
    switch (c) {
      case '"':
        out += "\\\"";
        break;
      case '\\':
        out += "\\\\";
        break;
      case '\n':
        out += "\\n";
        break;
      case '\t':
        out += "\\t";
        break;
      default:
        out.push_back(c);
    }
  }
  out.push_back('"');
  return out;
}

std::string print_arg(const GeneratorArg& arg) {
  std::string out = arg.key.empty() ? "" : arg.key + "=";
  switch (arg.kind) {
    case ArgKind::kNumber:
      return out + arg.text;
    case ArgKind::kString:
      return out + quote(arg.text);
    case ArgKind::kWord:
      return out + arg.text;
  }
  return out;
}

void print_generator(std::ostringstream& out, const GeneratorBinding& g) {
  out << g.generator_name << "(";
  for (std::size_t i = 0; i < g.parameters.size(); ++i) {
    if (i > 0) out << ", ";
    out << print_arg(g.parameters[i]);
  }
  out << ")";
}

void print_property(std::ostringstream& out, const PropertyDecl& p) {
  out << "  " << p.name << ": " << to_string(p.value_type) << " = ";
  print_generator(out, p.generator);
  if (!p.depends_on.empty()) {
    out << " correlated(";
    for (std::size_t i = 0; i < p.depends_on.size(); ++i) {
      if (i > 0) out << ", ";
      out << to_string(p.depends_on[i]);
    }
    out << ")";
  }
  out << "\n";
}

std::string_view arrow(Cardinality c) {
  switch (c) {
    case Cardinality::kOneToOne:
      return "<->";
    case Cardinality::kOneToMany:
      return "->";
    case Cardinality::kManyToMany:
      return "--";
  }
  return "--";
}

}  // namespace

Schema parse_schema(std::string_view text) {
  return Parser(Lexer(text).run()).run();
}

std::string print_schema(const Schema& schema) {
  std::ostringstream out;
  for (const auto& n : schema.node_types) {
    out << "node " << n.name << " {\n";
    for (const auto& p : n.properties) print_property(out, p);
    out << "}\n\n";
  }
  for (const auto& e : schema.edge_types) {
    out << "edge " << e.name << ": " << e.tail_type << " "
        << arrow(e.cardinality) << " " << e.head_type << " {\n";
    out << "  structure = ";
    print_generator(out, e.structure);
    out << "\n";
    if (e.correlation) {
      out << "  join = " << e.correlation->tail_property;
      if (e.correlation->head_property != e.correlation->tail_property) {
        out << ", " << e.correlation->head_property;
      }
      out << " ~ " << quote(e.correlation->distribution_path) << "\n";
    }
    for (const auto& p : e.properties) print_property(out, p);
    out << "}\n\n";
  }
  for (const auto& s : schema.scales) {
    out << "scale " << s.target << " = " << s.count << "\n";
  }
  return out.str();
}

}  // namespace graphsynth::dsl
