#include "spinr/catalog_format.hpp"

#include <cctype>

#include "spinr/errors.hpp"
#include "spinr/smith.hpp"

namespace spinr::format {

const Value* Value::find(std::string_view key) const {
  for (std::size_t i = 0; i < keys.size(); ++i)
    if (keys[i] == key) return &values[i];
  return nullptr;
}

const Value& Value::at(std::string_view key) const {
  if (kind != Kind::Block) throw CatalogError(line, "expected a { block } holding '" + std::string(key) + "'");
  if (const auto* v = find(key)) return *v;
  throw CatalogError(line, "missing field '" + std::string(key) + "'");
}

std::string Value::kind_name() const {
  switch (kind) {
    case Kind::Integer: return "integer";
    case Kind::String: return "string";
    case Kind::Identifier: return "identifier";
    case Kind::List: return "list";
    case Kind::Block: return "block";
  }
  return "?";
}

const std::string& Value::as_string() const {
  if (kind != Kind::String) throw CatalogError(line, "expected a string, found " + kind_name());
  return text;
}

const std::string& Value::as_identifier() const {
  if (kind != Kind::Identifier) throw CatalogError(line, "expected an identifier, found " + kind_name());
  return text;
}

std::int64_t Value::as_integer() const {
  if (kind != Kind::Integer) throw CatalogError(line, "expected an integer, found " + kind_name());
  return integer;
}

bool Value::as_bool() const {
  if (kind == Kind::Identifier && (text == "true" || text == "false")) return text == "true";
  throw CatalogError(line, "expected true or false");
}

const std::vector<Value>& Value::as_list() const {
  if (kind != Kind::List) throw CatalogError(line, "expected a [list], found " + kind_name());
  return items;
}

std::string Value::as_expression_source() const {
  if (kind == Kind::Integer) return std::to_string(integer);
  if (kind == Kind::String) return text;
  throw CatalogError(line, "expected an integer or an expression string, found " + kind_name());
}

namespace {

class TextParser {
 public:
  explicit TextParser(std::string_view text) : text_(text) {}

  std::vector<Record> records() {
    std::vector<Record> out;
    for (;;) {
      skip();
      if (pos_ >= text_.size()) return out;
      const int line = line_;
      auto type = identifier();
      skip();
      Record rec{std::move(type), value(), line};
      out.push_back(std::move(rec));
    }
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;

  [[noreturn]] void fail(const std::string& msg) const { throw CatalogError(line_, msg); }

  void skip() {
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == '\n') {
        ++line_;
        ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c)) || c == ',') {
        ++pos_;
      } else if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else {
        return;
      }
    }
  }

  static bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '-';
  }

  std::string identifier() {
    skip();
    if (pos_ >= text_.size() || !(std::isalpha(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      fail(pos_ >= text_.size() ? "unexpected end of file" : "expected a name, found '" + std::string(1, text_[pos_]) + "'");
    const auto start = pos_;
    while (pos_ < text_.size() && ident_char(text_[pos_])) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  Value value() {
    skip();
    if (pos_ >= text_.size()) fail("unexpected end of file, expected a value");
    Value v;
    v.line = line_;
    const char c = text_[pos_];
    if (c == '{') {
      block(v);
    } else if (c == '[') {
      ++pos_;
      v.kind = Value::Kind::List;
      for (;;) {
        skip();
        if (pos_ >= text_.size()) fail("unterminated list opened on line " + std::to_string(v.line));
        if (text_[pos_] == ']') {
          ++pos_;
          break;
        }
        v.items.push_back(value());
      }
    } else if (c == '"') {
      v.kind = Value::Kind::String;
      ++pos_;
      for (;;) {
        if (pos_ >= text_.size() || text_[pos_] == '\n') fail("unterminated string");
        const char ch = text_[pos_++];
        if (ch == '"') break;
        if (ch == '\\') {
          if (pos_ >= text_.size()) fail("unterminated string");
          const char esc = text_[pos_++];
          if (esc != '"' && esc != '\\') fail(std::string("unknown escape \\") + esc);
          v.text += esc;
        } else {
          v.text += ch;
        }
      }
    } else if (c == '-' || std::isdigit(static_cast<unsigned char>(c))) {
      v.kind = Value::Kind::Integer;
      bool negative = c == '-';
      if (negative) ++pos_;
      if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_]))) fail("malformed integer");
      std::int64_t x = 0;
      try {
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
          x = abelian::checked::add(abelian::checked::mul(x, 10), text_[pos_++] - '0');
      } catch (const std::overflow_error&) {
        fail("integer literal too large");
      }
      v.integer = negative ? -x : x;
    } else {
      v.kind = Value::Kind::Identifier;
      v.text = identifier();
      skip();
      if (pos_ < text_.size() && text_[pos_] == '{') {
        const auto tag = std::move(v.text);
        block(v);
        v.text = tag;
      }
    }
    return v;
  }

  void block(Value& v) {
    v.kind = Value::Kind::Block;
    v.line = line_;
    ++pos_;  // '{'
    for (;;) {
      skip();
      if (pos_ >= text_.size()) fail("unterminated block opened on line " + std::to_string(v.line));
      if (text_[pos_] == '}') {
        ++pos_;
        return;
      }
      const int key_line = line_;
      auto key = identifier();
      if (v.find(key)) throw CatalogError(key_line, "duplicate field '" + key + "'");
      v.keys.push_back(std::move(key));
      v.values.push_back(value());
    }
  }
};

}  // namespace

std::vector<Record> parse_catalog_text(std::string_view text) { return TextParser(text).records(); }

}  // namespace spinr::format
