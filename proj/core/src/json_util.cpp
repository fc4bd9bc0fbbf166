#include "summa/json_util.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "summa/error.hpp"

namespace summa {

namespace {

void dump_to(const Json& j, std::string& out) {
  switch (j.type()) {
    case Json::value_t::object: {
      out += '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ',';
        first = false;
        out += Json(it.key()).dump();
        out += ':';
        dump_to(it.value(), out);
      }
      out += '}';
      break;
    }
    case Json::value_t::array: {
      out += '[';
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += ',';
        dump_to(j[i], out);
      }
      out += ']';
      break;
    }
    case Json::value_t::number_float:
      out += format_double(j.get<double>());
      break;
    default:
      out += j.dump();
  }
}

Json bigint_json(const BigInt& z) {
  if (z >= std::numeric_limits<long long>::min() && z <= std::numeric_limits<long long>::max())
    return Json(z.convert_to<long long>());
  return Json(z.str());
}

BigInt bigint_from_json(const Json& j) {
  if (j.is_number_integer()) return BigInt(j.get<long long>());
  if (j.is_string()) {
    try {
      return BigInt(j.get<std::string>());
    } catch (const std::runtime_error&) {
    }
  }
  fail(ErrorCode::ParseError, "expected an integer, got " + j.dump());
}

}  // namespace

std::string format_double(double x) {
  if (std::isnan(x)) return "\"nan\"";
  if (std::isinf(x)) return x > 0 ? "\"inf\"" : "\"-inf\"";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  std::string s(buf);
  if (s.find_first_of(".eE") == std::string::npos) s += ".0";
  return s;
}

std::string canonical_dump(const Json& j) {
  std::string out;
  dump_to(j, out);
  return out;
}

Json number_to_json(const Number& n) {
  if (n.is_exact()) {
    const Rational& q = n.exact();
    if (denominator(q) == 1) return bigint_json(numerator(q));
    return Json{{"num", bigint_json(numerator(q))}, {"den", bigint_json(denominator(q))}};
  }
  if (n.value().imag() != 0.0) return Json::array({n.value().real(), n.value().imag()});
  return Json(n.real());
}

Number number_from_json(const Json& j) {
  if (j.is_number_integer()) return Number(Rational(j.get<long long>()));
  if (j.is_number_float()) return Number(j.get<double>());
  if (j.is_object() && j.contains("num") && j.contains("den")) {
    BigInt den = bigint_from_json(j.at("den"));
    if (den == 0) fail(ErrorCode::ParseError, "zero denominator");
    return Number(Rational(bigint_from_json(j.at("num")), den));
  }
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return Number(Complex(j[0].get<double>(), j[1].get<double>()));
  if (j.is_string()) return Number(parse_rational(j.get<std::string>()));
  fail(ErrorCode::ParseError, "cannot read a number from " + j.dump());
}

double double_from_json(const Json& j) {
  if (j.is_number()) return j.get<double>();
  Number n = number_from_json(j);
  if (n.value().imag() != 0.0) fail(ErrorCode::ParseError, "expected a real number, got " + j.dump());
  return n.real();
}

Json polynomial_to_json(const Polynomial& p) {
  Json arr = Json::array();
  for (const auto& c : p.numbers()) arr.push_back(number_to_json(c));
  return arr;
}

Polynomial polynomial_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) fail(ErrorCode::ParseError, "polynomial must be a non-empty coefficient array");
  std::vector<Number> c;
  for (const auto& x : j) c.push_back(number_from_json(x));
  return Polynomial(c);
}

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    fail(ErrorCode::ParseError, e.what());
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::ParseError, "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_json(ss.str());
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) fail(ErrorCode::InvalidArgument, "cannot write " + path);
  out << text;
}

}  // namespace summa
