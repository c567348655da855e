#include "hu/ringspec.hpp"

#include <fstream>
#include <optional>
#include <sstream>
#include <vector>

namespace hu {

namespace {

struct Token {
  std::string text;
  int col;
};

std::vector<Token> tokenize(const std::string& line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    if (std::isspace(static_cast<unsigned char>(line[i]))) {
      ++i;
      continue;
    }
    if (line[i] == '#') break;
    std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i])))
      ++i;
    out.push_back({line.substr(start, i - start), static_cast<int>(start) + 1});
  }
  return out;
}

int parse_int(const Token& tok, int lineno) {
  try {
    std::size_t used = 0;
    int v = std::stoi(tok.text, &used);
    if (used != tok.text.size()) throw std::invalid_argument("trailing");
    return v;
  } catch (const std::exception&) {
    throw SpecParseError("expected an integer, got '" + tok.text + "'", lineno,
                         tok.col);
  }
}

std::uint64_t parse_element_set(const Token& tok, int lineno) {
  const std::string& s = tok.text;
  if (s.size() < 2 || s.front() != '{' || s.back() != '}')
    throw SpecParseError("expected a set like {0,2}", lineno, tok.col);
  std::uint64_t mask = 0;
  std::string body = s.substr(1, s.size() - 2);
  if (body.empty()) return 0;
  std::stringstream ss(body);
  std::string part;
  while (std::getline(ss, part, ',')) {
    try {
      std::size_t used = 0;
      int v = std::stoi(part, &used);
      if (used != part.size() || v < 0 || v >= 64) throw std::invalid_argument("range");
      mask |= 1ull << v;
    } catch (const std::exception&) {
      throw SpecParseError("bad set element '" + part + "'", lineno, tok.col);
    }
  }
  return mask;
}

}  // namespace

FormRingPtr parse_ring_spec(const std::string& text) {
  std::optional<FiniteRing> ring;
  std::optional<Elt> lambda;
  std::optional<std::uint64_t> lambda_set;
  bool lambda_set_max = false, lambda_set_min = false;

  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::vector<Token> toks = tokenize(line);
    if (toks.empty()) continue;
    const std::string& head = toks[0].text;
    if (head == "ring") {
      if (toks.size() < 2)
        throw SpecParseError("ring declaration needs a kind", lineno, toks[0].col);
      const std::string& kind = toks[1].text;
      try {
        if (kind == "zmod") {
          if (toks.size() != 3)
            throw SpecParseError("usage: ring zmod <m>", lineno, toks[1].col);
          ring = build_zmod(parse_int(toks[2], lineno));
        } else if (kind == "quad") {
          if (toks.size() != 5)
            throw SpecParseError("usage: ring quad <m> <b> <c>", lineno, toks[1].col);
          ring = build_quadratic(parse_int(toks[2], lineno),
                                 parse_int(toks[3], lineno),
                                 parse_int(toks[4], lineno));
        } else if (kind == "prodswap") {
          if (toks.size() != 3)
            throw SpecParseError("usage: ring prodswap <m>", lineno, toks[1].col);
          ring = build_product_swap(parse_int(toks[2], lineno));
        } else {
          throw SpecParseError("unknown ring kind '" + kind + "'", lineno, toks[1].col);
        }
      } catch (const ValidationError& e) {
        throw SpecParseError(e.what(), lineno, toks[1].col);
      }
    } else if (head == "lambda") {
      if (toks.size() != 2)
        throw SpecParseError("usage: lambda <index>", lineno, toks[0].col);
      lambda = parse_int(toks[1], lineno);
    } else if (head == "Lambda") {
      if (toks.size() != 2)
        throw SpecParseError("usage: Lambda {i,j,...} | max | min", lineno, toks[0].col);
      if (toks[1].text == "max")
        lambda_set_max = true;
      else if (toks[1].text == "min")
        lambda_set_min = true;
      else
        lambda_set = parse_element_set(toks[1], lineno);
    } else {
      throw SpecParseError("unknown declaration '" + head + "'", lineno, toks[0].col);
    }
  }

  if (!ring) throw SpecParseError("missing 'ring' declaration", lineno + 1, 1);
  if (!lambda) throw SpecParseError("missing 'lambda' declaration", lineno + 1, 1);
  if (!lambda_set && !lambda_set_max && !lambda_set_min)
    throw SpecParseError("missing 'Lambda' declaration", lineno + 1, 1);

  auto R = std::make_shared<const FiniteRing>(std::move(*ring));
  AdditiveSubgroup Lambda;
  if (lambda_set_max)
    Lambda = lambda_max(*R, *lambda);
  else if (lambda_set_min)
    Lambda = lambda_min(*R, *lambda);
  else
    Lambda = AdditiveSubgroup(*lambda_set);
  return make_form_ring(R, *lambda, Lambda);
}

FormRingPtr load_ring_spec_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open ring spec file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_ring_spec(ss.str());
}

}  // namespace hu
