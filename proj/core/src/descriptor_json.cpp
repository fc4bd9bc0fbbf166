#include "summa/seqcore/descriptor_json.hpp"

#include "summa/error.hpp"

namespace summa::seq {

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) fail(ErrorCode::ParseError, std::string("missing field '") + key + "'");
  return j.at(key);
}

Json numbers_to_json(const std::vector<Number>& v) {
  Json arr = Json::array();
  for (const auto& x : v) arr.push_back(number_to_json(x));
  return arr;
}

std::vector<Number> numbers_from_json(const Json& j) {
  if (!j.is_array()) fail(ErrorCode::ParseError, "expected an array");
  std::vector<Number> v;
  for (const auto& x : j) v.push_back(number_from_json(x));
  return v;
}

std::vector<double> doubles_from_json(const Json& j) {
  if (!j.is_array()) fail(ErrorCode::ParseError, "expected an array");
  std::vector<double> v;
  for (const auto& x : j) v.push_back(double_from_json(x));
  return v;
}

}  // namespace

Json tail_to_json(const Tail& t) {
  switch (t.kind) {
    case Tail::Kind::values:
      return Json{{"kind", "values"}, {"values", numbers_to_json(t.values)}};
    case Tail::Kind::factorial:
      return Json{{"kind", "factorial"}, {"coeff", t.coeff}, {"base", t.base}, {"power", t.power}};
    case Tail::Kind::q_gaussian:
      return Json{{"kind", "q_gaussian"}, {"coeff", t.coeff}, {"power", t.power}, {"q", t.q}};
  }
  return Json();
}

Tail tail_from_json(const Json& j) {
  Tail t;
  const std::string kind = field(j, "kind").get<std::string>();
  if (kind == "values") {
    t.kind = Tail::Kind::values;
    t.values = numbers_from_json(field(j, "values"));
  } else if (kind == "factorial") {
    t.kind = Tail::Kind::factorial;
    t.coeff = j.contains("coeff") ? double_from_json(j.at("coeff")) : 1.0;
    t.base = j.contains("base") ? double_from_json(j.at("base")) : 1.0;
    t.power = j.contains("power") ? double_from_json(j.at("power")) : 1.0;
  } else if (kind == "q_gaussian") {
    t.kind = Tail::Kind::q_gaussian;
    t.coeff = j.contains("coeff") ? double_from_json(j.at("coeff")) : 1.0;
    t.power = j.contains("power") ? double_from_json(j.at("power")) : 0.0;
    t.q = double_from_json(field(j, "q"));
  } else {
    fail(ErrorCode::ParseError, "unknown tail kind '" + kind + "'");
  }
  return t;
}

Json to_json(const SequenceDescriptor& d) {
  Json j;
  j["kind"] = std::string(kind_name(d.kind()));
  switch (d.kind()) {
    case Kind::geometric:
      j["a"] = number_to_json(d.as<Geometric>().a);
      break;
    case Kind::polynomial:
      j["w"] = polynomial_to_json(d.as<PolynomialSeq>().w);
      break;
    case Kind::rational:
      j["num"] = polynomial_to_json(d.as<RationalSeq>().num);
      j["den"] = polynomial_to_json(d.as<RationalSeq>().den);
      break;
    case Kind::power_sum:
      j["bases"] = numbers_to_json(d.as<PowerSum>().bases);
      j["scale"] = number_to_json(d.as<PowerSum>().scale);
      break;
    case Kind::exp_poly: {
      Json terms = Json::array();
      for (const auto& t : d.as<ExpPolynomial>().terms)
        terms.push_back(Json{{"w", polynomial_to_json(t.w)}, {"base", number_to_json(t.base)}});
      j["terms"] = terms;
      j["scale"] = number_to_json(d.as<ExpPolynomial>().scale);
      break;
    }
    case Kind::q_factorial:
      j["q"] = number_to_json(d.as<QFactorial>().q);
      break;
    case Kind::gamma_ratio: {
      const auto& g = d.as<GammaRatio>();
      j["a"] = g.a;
      j["b"] = g.b;
      if (!g.balanced) j["balanced"] = false;
      break;
    }
    case Kind::periodic:
      j["values"] = numbers_to_json(d.as<Periodic>().values);
      break;
    case Kind::q_gaussian:
      j["q"] = number_to_json(d.as<QGaussian>().q);
      j["s"] = d.as<QGaussian>().s;
      break;
    case Kind::product:
      j["left"] = to_json(d.as<ProductSeq>().left);
      j["right"] = to_json(d.as<ProductSeq>().right);
      break;
    case Kind::inverse:
      j["inner"] = to_json(d.as<InverseSeq>().inner);
      break;
    case Kind::sum:
      j["left"] = to_json(d.as<SumSeq>().left);
      j["right"] = to_json(d.as<SumSeq>().right);
      break;
    case Kind::perturbed:
      j["base"] = to_json(d.as<PerturbedSeq>().base);
      j["tail"] = tail_to_json(d.as<PerturbedSeq>().tail);
      break;
  }
  return j;
}

SequenceDescriptor descriptor_from_json(const Json& j) {
  if (!j.is_object()) fail(ErrorCode::ParseError, "descriptor must be a JSON object");
  const std::string kind = field(j, "kind").get<std::string>();
  if (kind == "geometric") return geometric(number_from_json(field(j, "a")));
  if (kind == "polynomial") return polynomial(polynomial_from_json(field(j, "w")));
  if (kind == "rational") return rational(polynomial_from_json(field(j, "num")), polynomial_from_json(field(j, "den")));
  if (kind == "power_sum") {
    auto d = power_sum(numbers_from_json(field(j, "bases")));
    if (j.contains("scale") &&
        std::abs(number_from_json(j.at("scale")).real() - d.as<PowerSum>().scale.real()) > 1e-15)
      fail(ErrorCode::InvalidDescriptor, "power sum scale must equal 1/k");
    return d;
  }
  if (kind == "exp_poly") {
    std::vector<ExpPolyTerm> terms;
    for (const auto& t : field(j, "terms"))
      terms.push_back(ExpPolyTerm{polynomial_from_json(field(t, "w")), number_from_json(field(t, "base"))});
    auto d = exp_polynomial(std::move(terms));
    if (j.contains("scale") &&
        std::abs(number_from_json(j.at("scale")).real() - d.as<ExpPolynomial>().scale.real()) >
            1e-14 * d.as<ExpPolynomial>().scale.real())
      fail(ErrorCode::InvalidDescriptor, "exp-polynomial scale must equal 1/sum w_i(0)");
    return d;
  }
  if (kind == "q_factorial") return q_factorial(number_from_json(field(j, "q")));
  if (kind == "gamma_ratio") {
    bool balanced = j.contains("balanced") ? j.at("balanced").get<bool>() : true;
    return gamma_ratio(doubles_from_json(field(j, "a")), doubles_from_json(field(j, "b")), balanced);
  }
  if (kind == "periodic") return periodic(numbers_from_json(field(j, "values")));
  if (kind == "q_gaussian") return q_gaussian(number_from_json(field(j, "q")), double_from_json(field(j, "s")));
  if (kind == "product")
    return product(descriptor_from_json(field(j, "left")), descriptor_from_json(field(j, "right")));
  if (kind == "inverse") return inverse(descriptor_from_json(field(j, "inner")));
  if (kind == "sum") return sum(descriptor_from_json(field(j, "left")), descriptor_from_json(field(j, "right")));
  if (kind == "perturbed")
    return perturbed(descriptor_from_json(field(j, "base")), tail_from_json(field(j, "tail")));
  fail(ErrorCode::ParseError, "unknown descriptor kind '" + kind + "'");
}

std::string canonical_string(const SequenceDescriptor& d) { return canonical_dump(to_json(d)); }

bool same_descriptor(const SequenceDescriptor& a, const SequenceDescriptor& b) {
  return &a.node() == &b.node() || canonical_string(a) == canonical_string(b);
}

}  // namespace summa::seq
