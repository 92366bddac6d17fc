#include "momentkit/documents.hpp"

#include <json.hpp>

namespace momentkit {

using nlohmann::json;

namespace {

json parse_json(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::exception& e) {
    throw Error(Errc::parse_error, std::string("invalid JSON: ") + e.what());
  }
}

template <class T>
T field(const json& obj, const char* name) {
  if (!obj.is_object() || !obj.contains(name)) {
    throw Error(Errc::parse_error, std::string("missing field \"") + name + "\"");
  }
  try {
    return obj.at(name).get<T>();
  } catch (const json::exception& e) {
    throw Error(Errc::parse_error,
                std::string("field \"") + name + "\" has the wrong type: " + e.what());
  }
}

const json& array_field(const json& obj, const char* name) {
  if (!obj.is_object() || !obj.contains(name) || !obj.at(name).is_array()) {
    throw Error(Errc::parse_error, std::string("field \"") + name + "\" must be an array");
  }
  return obj.at(name);
}

}  // namespace

MomentSequence parse_moment_document(std::string_view text) {
  const json doc = parse_json(text);
  const auto dim = field<std::size_t>(doc, "dimension");
  const auto max_degree = field<unsigned>(doc, "max_degree");
  if (dim == 0) throw Error(Errc::parse_error, "dimension must be >= 1");
  if (max_degree % 2 != 0) throw Error(Errc::parse_error, "max_degree must be even");
  const std::size_t count = binomial(max_degree + dim, dim);
  std::vector<double> values(count, 0.0);
  std::vector<bool> seen(count, false);
  for (const json& entry : array_field(doc, "moments")) {
    const auto index = field<std::vector<unsigned>>(entry, "index");
    const auto value = field<double>(entry, "value");
    if (index.size() != dim) {
      throw Error(Errc::parse_error, "moment index has length " +
                                         std::to_string(index.size()) +
                                         ", expected " + std::to_string(dim));
    }
    const MultiIndex mi(index);
    if (mi.degree() > max_degree) continue;
    const std::size_t rank = graded_lex_rank(mi);
    if (seen[rank]) throw Error(Errc::parse_error, "duplicate moment index");
    seen[rank] = true;
    values[rank] = value;
  }
  for (std::size_t i = 0; i < count; ++i) {
    if (!seen[i]) {
      throw Error(Errc::coverage,
                  "moment table is missing an index of degree <= " +
                      std::to_string(max_degree));
    }
  }
  return MomentSequence(dim, max_degree, std::move(values));
}

std::string write_moment_document(const MomentSequence& moments) {
  json doc;
  doc["dimension"] = moments.dimension();
  doc["max_degree"] = moments.max_degree();
  doc["normalized"] = moments.normalized();
  doc["original_mass"] = moments.original_mass();
  json list = json::array();
  const auto basis = enumerate_monomials(moments.dimension(), moments.max_degree());
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const auto e = basis[i].exponents();
    list.push_back({{"index", std::vector<unsigned>(e.begin(), e.end())},
                    {"value", moments.values()[i]}});
  }
  doc["moments"] = std::move(list);
  return doc.dump(2);
}

MeasureSpec parse_measure_document(std::string_view text) {
  const json doc = parse_json(text);
  MeasureSpec spec;
  if (doc.is_object() && doc.contains("atoms")) {
    std::vector<Atom> atoms;
    for (const json& a : array_field(doc, "atoms")) {
      atoms.push_back({field<std::vector<double>>(a, "point"), field<double>(a, "weight")});
    }
    spec.data = std::move(atoms);
  } else if (doc.is_object() && doc.contains("box")) {
    const json& box = doc.at("box");
    BoxSpec b;
    for (const json& bound : array_field(box, "bounds")) {
      if (!bound.is_array() || bound.size() != 2) {
        throw Error(Errc::parse_error, "box bounds must be [lo, hi] pairs");
      }
      b.bounds.emplace_back(bound[0].get<double>(), bound[1].get<double>());
    }
    b.order = field<unsigned>(box, "order");
    spec.data = std::move(b);
  } else {
    throw Error(Errc::parse_error, "measure document needs \"atoms\" or \"box\"");
  }
  try {
    spec.validate();
  } catch (const Error& e) {
    throw Error(Errc::parse_error, std::string("invalid measure: ") + e.what());
  }
  return spec;
}

ComplexMomentFunction parse_complex_moment_document(std::string_view text) {
  const json doc = parse_json(text);
  const auto level = field<unsigned>(doc, "max_level");
  const std::size_t side = level + 1;
  std::vector<std::complex<double>> values(side * side);
  std::vector<bool> seen(side * side, false);
  const json& list = array_field(doc, "values");
  if (list.empty()) throw Error(Errc::coverage, "complex moment table is empty");
  for (const json& v : list) {
    const auto m = field<unsigned>(v, "m");
    const auto n = field<unsigned>(v, "n");
    if (m > level || n > level) continue;
    const double im = v.contains("im") ? field<double>(v, "im") : 0.0;
    values[m * side + n] = {field<double>(v, "re"), im};
    seen[m * side + n] = true;
  }
  for (std::size_t i = 0; i < seen.size(); ++i) {
    if (!seen[i]) {
      throw Error(Errc::coverage, "complex moment table misses f(" +
                                      std::to_string(i / side) + "," +
                                      std::to_string(i % side) + ")");
    }
  }
  return ComplexMomentFunction(level, std::move(values));
}

std::string write_complex_moment_document(const ComplexMomentFunction& f) {
  json doc;
  doc["max_level"] = f.max_level();
  json list = json::array();
  for (unsigned m = 0; m <= f.max_level(); ++m) {
    for (unsigned n = 0; n <= f.max_level(); ++n) {
      const auto v = f(m, n);
      list.push_back({{"m", m}, {"n", n}, {"re", v.real()}, {"im", v.imag()}});
    }
  }
  doc["values"] = std::move(list);
  return doc.dump(2);
}

ComplexAtomDocument parse_complex_atoms_document(std::string_view text) {
  const json doc = parse_json(text);
  ComplexAtomDocument out;
  for (const json& a : array_field(doc, "atoms")) {
    const double im = a.contains("im") ? field<double>(a, "im") : 0.0;
    out.atoms.push_back({{field<double>(a, "re"), im}, field<double>(a, "weight")});
  }
  if (doc.contains("max_level")) out.max_level = field<int>(doc, "max_level");
  return out;
}

OperatorDocument parse_operator_document(std::string_view text) {
  const json doc = parse_json(text);
  const auto rows = field<std::vector<std::vector<double>>>(doc, "matrix");
  OperatorDocument out;
  try {
    out.op = SymMatrix::from_rows(rows);
  } catch (const Error& e) {
    throw Error(Errc::parse_error, std::string("invalid operator: ") + e.what());
  }
  out.h = field<std::vector<double>>(doc, "vector");
  return out;
}

}  // namespace momentkit
