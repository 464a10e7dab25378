// Recursive-descent reader for the small OpenQASM 2.0 subset we ingest:
//
//   OPENQASM 2.0;               optional header
//   include "qelib1.inc";       ignored
//   qreg q[n];                  exactly one
//   creg c[n];                  accepted, only used as a measure target
//   cx q[i],q[j]; cz q[i],q[j]; two-qubit gates we keep
//   <name>(<params>)? q[i];     any one-argument gate, dropped
//   measure q[i] -> c[i];       dropped
//   barrier q[0],q[1],...;      dropped

#include <cctype>
#include <optional>
#include <set>
#include <string>

#include "atomgame/circuit.hpp"
#include "atomgame/errors.hpp"

namespace atomgame {

namespace {

enum class Tok { kIdent, kInt, kReal, kString, kPunct, kArrow, kEnd };

struct Token {
  Tok kind = Tok::kEnd;
  std::string text;
  std::size_t line = 0;
  std::size_t column = 0;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  Token next() {
    skip_space_and_comments();
    Token t;
    t.line = line_;
    t.column = col_;
    if (pos_ >= src_.size()) return t;
    const char c = src_[pos_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      t.kind = Tok::kIdent;
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) ||
              src_[pos_] == '_')) {
        t.text.push_back(advance());
      }
      return t;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      t.kind = Tok::kInt;
      while (pos_ < src_.size() &&
             (std::isdigit(static_cast<unsigned char>(src_[pos_])) ||
              src_[pos_] == '.' || src_[pos_] == 'e' || src_[pos_] == 'E')) {
        if (!std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
          t.kind = Tok::kReal;
        }
        t.text.push_back(advance());
      }
      return t;
    }
    if (c == '"') {
      t.kind = Tok::kString;
      advance();
      while (pos_ < src_.size() && src_[pos_] != '"' && src_[pos_] != '\n') {
        t.text.push_back(advance());
      }
      if (pos_ >= src_.size() || src_[pos_] != '"') {
        throw ParseError("unterminated string", t.line, t.column);
      }
      advance();
      return t;
    }
    if (c == '-' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '>') {
      advance();
      advance();
      t.kind = Tok::kArrow;
      t.text = "->";
      return t;
    }
    t.kind = Tok::kPunct;
    t.text.push_back(advance());
    return t;
  }

 private:
  char advance() {
    const char c = src_[pos_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }

  void skip_space_and_comments() {
    while (pos_ < src_.size()) {
      const char c = src_[pos_];
      if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else if (c == '/' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '/') {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance();
      } else {
        break;
      }
    }
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

struct Argument {
  std::string reg;
  std::optional<std::size_t> index;
  Token where;
};

class QasmParser {
 public:
  explicit QasmParser(std::string_view src) : lexer_(src) { shift(); }

  GateList parse() {
    while (cur_.kind != Tok::kEnd) statement();
    if (!qreg_) throw ParseError("missing qreg declaration", 0, 0);
    return out_;
  }

 private:
  void shift() { cur_ = lexer_.next(); }

  [[noreturn]] void fail(const std::string& msg, const Token& at) const {
    throw ParseError(msg, at.line, at.column);
  }
  [[noreturn]] void fail(const std::string& msg) const { fail(msg, cur_); }

  std::string describe(const Token& t) const {
    return t.kind == Tok::kEnd ? "end of input" : "'" + t.text + "'";
  }

  void expect_punct(char p) {
    if (cur_.kind != Tok::kPunct || cur_.text[0] != p) {
      fail(std::string("expected '") + p + "' but found " + describe(cur_));
    }
    shift();
  }

  std::string expect_ident() {
    if (cur_.kind != Tok::kIdent) {
      fail("expected identifier but found " + describe(cur_));
    }
    std::string s = cur_.text;
    shift();
    return s;
  }

  std::size_t expect_int() {
    if (cur_.kind != Tok::kInt) {
      fail("expected integer but found " + describe(cur_));
    }
    const std::size_t v = std::stoull(cur_.text);
    shift();
    return v;
  }

  bool at_punct(char p) const {
    return cur_.kind == Tok::kPunct && cur_.text[0] == p;
  }

  void statement() {
    const Token head = cur_;
    if (head.kind != Tok::kIdent) fail("expected statement but found " + describe(head));
    const std::string word = expect_ident();
    if (word == "OPENQASM") {
      if (cur_.kind != Tok::kReal && cur_.kind != Tok::kInt) fail("expected version number");
      shift();
      expect_punct(';');
    } else if (word == "include") {
      if (cur_.kind != Tok::kString) fail("expected file name string");
      shift();
      expect_punct(';');
    } else if (word == "qreg" || word == "creg") {
      declaration(word == "qreg", head);
    } else if (word == "measure") {
      const Argument src = argument();
      check_qubit(src);
      if (cur_.kind != Tok::kArrow) fail("expected '->' in measure");
      shift();
      const Argument dst = argument();
      if (!cregs_.contains(dst.reg)) {
        fail("undeclared register '" + dst.reg + "'", dst.where);
      }
      expect_punct(';');
    } else if (word == "barrier") {
      for (const Argument& a : argument_list()) check_qubit(a);
      expect_punct(';');
    } else {
      gate_call(word, head);
    }
  }

  void declaration(bool quantum, const Token& head) {
    const std::string name = expect_ident();
    expect_punct('[');
    const std::size_t size = expect_int();
    expect_punct(']');
    expect_punct(';');
    if (quantum) {
      if (qreg_) fail("only one qreg declaration is supported", head);
      qreg_ = name;
      out_.n_qubits = size;
    } else {
      cregs_.insert(name);
    }
  }

  void gate_call(const std::string& name, const Token& head) {
    if (at_punct('(')) skip_parameters();
    const std::vector<Argument> args = argument_list();
    expect_punct(';');
    const bool two_qubit = name == "cx" || name == "cz" || name == "CX";
    if (two_qubit) {
      if (args.size() != 2) {
        fail(name + " takes 2 arguments, got " + std::to_string(args.size()), head);
      }
      for (const Argument& a : args) {
        check_qubit(a);
        if (!a.index) fail(name + " needs indexed qubit arguments", a.where);
      }
      if (*args[0].index == *args[1].index) {
        fail(name + " acts on the same qubit twice", args[1].where);
      }
      out_.gates.emplace_back(static_cast<Qubit>(*args[0].index),
                              static_cast<Qubit>(*args[1].index));
      return;
    }
    if (args.size() != 1) {
      fail("unsupported gate '" + name + "' with " + std::to_string(args.size()) +
               " arguments",
           head);
    }
    check_qubit(args[0]);
  }

  void skip_parameters() {
    int depth = 0;
    do {
      if (cur_.kind == Tok::kEnd || at_punct(';')) fail("unbalanced parameter list");
      if (at_punct('(')) ++depth;
      if (at_punct(')')) --depth;
      shift();
    } while (depth > 0);
  }

  Argument argument() {
    Argument a;
    a.where = cur_;
    a.reg = expect_ident();
    if (at_punct('[')) {
      shift();
      a.index = expect_int();
      expect_punct(']');
    }
    return a;
  }

  std::vector<Argument> argument_list() {
    std::vector<Argument> args;
    args.push_back(argument());
    while (at_punct(',')) {
      shift();
      args.push_back(argument());
    }
    return args;
  }

  void check_qubit(const Argument& a) const {
    if (!qreg_ || a.reg != *qreg_) {
      fail("undeclared register '" + a.reg + "'", a.where);
    }
    if (a.index && *a.index >= out_.n_qubits) {
      fail("qubit index " + std::to_string(*a.index) + " out of range for " +
               a.reg + "[" + std::to_string(out_.n_qubits) + "]",
           a.where);
    }
  }

  Lexer lexer_;
  Token cur_;
  std::optional<std::string> qreg_;
  std::set<std::string> cregs_;
  GateList out_;
};

}  // namespace

GateList parse_qasm(std::string_view text) { return QasmParser(text).parse(); }

}  // namespace atomgame
