#include "qfdiv/json_io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>

#include "json.hpp"

namespace qfdiv {

namespace {

using nlohmann::json;

json parse_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw SchemaError(std::string("not valid JSON: ") + e.what());
  }
}

void require_keys(const json& obj, const char* what,
                  const std::set<std::string>& required,
                  const std::set<std::string>& optional = {}) {
  if (!obj.is_object()) {
    throw SchemaError(std::string(what) + ": expected an object");
  }
  for (const auto& item : obj.items()) {
    if (!required.count(item.key()) && !optional.count(item.key())) {
      throw SchemaError(std::string(what) + ": unknown key \"" + item.key() +
                        "\"");
    }
  }
  for (const auto& key : required) {
    if (!obj.contains(key)) {
      throw SchemaError(std::string(what) + ": missing key \"" + key + "\"");
    }
  }
}

double finite_number(const json& v, const char* what) {
  if (!v.is_number()) {
    throw SchemaError(std::string(what) + ": expected a number");
  }
  const double x = v.get<double>();
  if (!std::isfinite(x)) {
    throw SchemaError(std::string(what) + ": number must be finite");
  }
  return x;
}

Eigen::MatrixXcd matrix_from(const json& v) {
  if (!v.is_array() || v.empty()) {
    throw SchemaError("matrix: expected a non-empty list of rows");
  }
  const std::size_t rows = v.size();
  std::size_t cols = 0;
  Eigen::MatrixXcd m;
  for (std::size_t i = 0; i < rows; ++i) {
    const json& row = v[i];
    if (!row.is_array() || row.empty()) {
      throw SchemaError("matrix: each row must be a non-empty list");
    }
    if (i == 0) {
      cols = row.size();
      m.resize(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    } else if (row.size() != cols) {
      throw SchemaError("matrix: rows have unequal lengths");
    }
    for (std::size_t j = 0; j < cols; ++j) {
      const json& entry = row[j];
      if (!entry.is_array() || entry.size() != 2) {
        throw SchemaError("matrix: each entry must be [re, im]");
      }
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          std::complex<double>(finite_number(entry[0], "matrix entry"),
                               finite_number(entry[1], "matrix entry"));
    }
  }
  return m;
}

PositiveFunctional density_from(const json& v, const char* what) {
  const Eigen::MatrixXcd m = matrix_from(v);
  if (m.rows() != m.cols()) {
    throw SchemaError(std::string(what) + ": density must be square");
  }
  try {
    return PositiveFunctional(HermitianMatrix(m));
  } catch (const std::invalid_argument& e) {
    throw SchemaError(std::string(what) + ": " + e.what());
  }
}

OperatorConvexFunction function_from(const json& spec) {
  if (!spec.is_object()) {
    throw SchemaError("function: expected an object");
  }
  if (spec.contains("canonical")) {
    require_keys(spec, "function", {"canonical"});
    const json& c = spec["canonical"];
    require_keys(c, "canonical function", {"a", "b", "c", "d", "atoms"});
    CanonicalData data;
    data.a = finite_number(c["a"], "canonical a");
    data.b = finite_number(c["b"], "canonical b");
    data.c = finite_number(c["c"], "canonical c");
    data.d = finite_number(c["d"], "canonical d");
    if (!c["atoms"].is_array()) {
      throw SchemaError("canonical atoms: expected a list of [s, w]");
    }
    for (const json& atom : c["atoms"]) {
      if (!atom.is_array() || atom.size() != 2) {
        throw SchemaError("canonical atoms: each atom must be [s, w]");
      }
      data.atoms.push_back({finite_number(atom[0], "canonical atom s"),
                            finite_number(atom[1], "canonical atom w")});
    }
    try {
      return OperatorConvexFunction::canonical(data);
    } catch (const std::invalid_argument& e) {
      throw SchemaError(std::string("canonical function: ") + e.what());
    }
  }
  if (!spec.contains("name")) {
    throw SchemaError("function: needs \"name\" or \"canonical\"");
  }
  if (!spec["name"].is_string()) {
    throw SchemaError("function name: expected a string");
  }
  const std::string name = spec["name"].get<std::string>();
  try {
    if (name == "xlogx" || name == "neglog" || name == "chi2" ||
        name == "square") {
      require_keys(spec, "function", {"name"});
      if (name == "xlogx") return OperatorConvexFunction::xlogx();
      if (name == "neglog") return OperatorConvexFunction::neglog();
      if (name == "chi2") return OperatorConvexFunction::chi2();
      return OperatorConvexFunction::square();
    }
    if (name == "power" || name == "negpower") {
      require_keys(spec, "function", {"name", "alpha"});
      const double alpha = finite_number(spec["alpha"], "function alpha");
      return name == "power" ? OperatorConvexFunction::power(alpha)
                             : OperatorConvexFunction::negpower(alpha);
    }
    if (name == "affine") {
      require_keys(spec, "function", {"name", "a", "b"});
      return OperatorConvexFunction::affine(finite_number(spec["a"], "affine a"),
                                            finite_number(spec["b"], "affine b"));
    }
  } catch (const std::invalid_argument& e) {
    throw SchemaError(std::string("function: ") + e.what());
  }
  throw SchemaError("function: unknown name \"" + name + "\"");
}

std::vector<int> indices_from(const json& v, const char* what) {
  if (!v.is_array()) {
    throw SchemaError(std::string(what) + ": expected a list of indices");
  }
  std::vector<int> out;
  for (const json& e : v) {
    if (!e.is_number_integer()) {
      throw SchemaError(std::string(what) + ": indices must be integers");
    }
    out.push_back(e.get<int>());
  }
  return out;
}

Partition partition_from(const json& v, const char* what) {
  if (!v.is_array() || v.empty()) {
    throw SchemaError(std::string(what) + ": expected a list of blocks");
  }
  Partition p;
  for (const json& block : v) {
    p.push_back(indices_from(block, what));
  }
  return p;
}

void append_double(std::string& out, double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  out += buf;
}

void append_matrix(std::string& out, const Eigen::MatrixXcd& m) {
  out += '[';
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    if (i) out += ',';
    out += '[';
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) out += ',';
      out += '[';
      append_double(out, m(i, j).real());
      out += ',';
      append_double(out, m(i, j).imag());
      out += ']';
    }
    out += ']';
  }
  out += ']';
}

void append_extended(std::string& out, const ExtendedReal& v) {
  if (v.is_infinite()) {
    out += "\"inf\"";
  } else {
    append_double(out, v.value());
  }
}

}  // namespace

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

Eigen::MatrixXcd parse_matrix_json(const std::string& text) {
  return matrix_from(parse_text(text));
}

PairInput parse_pair_json(const std::string& text) {
  const json doc = parse_text(text);
  require_keys(doc, "pair", {"rho", "sigma"});
  PairInput pair{density_from(doc["rho"], "rho"),
                 density_from(doc["sigma"], "sigma")};
  if (pair.rho.dim() != pair.sigma.dim()) {
    throw SchemaError("pair: rho and sigma have different dimensions");
  }
  return pair;
}

OperatorConvexFunction parse_function_json(const std::string& text) {
  return function_from(parse_text(text));
}

OperatorConvexFunction parse_function_spec(const std::string& arg) {
  const auto first = arg.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && arg[first] == '{') {
    return parse_function_json(arg);
  }
  return function_from(json{{"name", arg}});
}

Channel parse_channel_json(const std::string& text, int dim) {
  const json doc = parse_text(text);
  if (!doc.is_object() || doc.size() != 1) {
    throw SchemaError(
        "channel: expected exactly one of kraus, pinching, compression");
  }
  try {
    if (doc.contains("kraus")) {
      if (!doc["kraus"].is_array() || doc["kraus"].empty()) {
        throw SchemaError("channel kraus: expected a list of matrices");
      }
      std::vector<Eigen::MatrixXcd> ops;
      for (const json& op : doc["kraus"]) {
        ops.push_back(matrix_from(op));
        if (ops.back().cols() != dim) {
          throw SchemaError("channel kraus: operator input dim mismatch");
        }
      }
      return Channel::kraus(std::move(ops));
    }
    if (doc.contains("pinching")) {
      Partition p = partition_from(doc["pinching"], "channel pinching");
      validate_partition(p, dim);
      return Channel::pinching(std::move(p));
    }
    if (doc.contains("compression")) {
      std::vector<int> idx = indices_from(doc["compression"], "channel compression");
      for (int i : idx) {
        if (i < 0 || i >= dim) {
          throw SchemaError("channel compression: index out of range");
        }
      }
      return Channel::compression(std::move(idx));
    }
  } catch (const SchemaError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw SchemaError(std::string("channel: ") + e.what());
  }
  throw SchemaError(
      "channel: expected exactly one of kraus, pinching, compression");
}

std::vector<Partition> parse_partition_chain(const std::string& text) {
  const json doc = parse_text(text);
  if (!doc.is_array() || doc.empty()) {
    throw SchemaError("chain: expected a non-empty list of partitions");
  }
  std::vector<Partition> chain;
  for (const json& p : doc) {
    chain.push_back(partition_from(p, "chain partition"));
  }
  return chain;
}

std::vector<std::vector<int>> parse_index_chain(const std::string& text) {
  const json doc = parse_text(text);
  if (!doc.is_array() || doc.empty()) {
    throw SchemaError("chain: expected a non-empty list of index sets");
  }
  std::vector<std::vector<int>> chain;
  for (const json& s : doc) {
    chain.push_back(indices_from(s, "chain index set"));
  }
  return chain;
}

std::vector<double> parse_schedule(const std::string& arg) {
  std::vector<double> out;
  const auto caret = arg.find("2^-");
  if (caret != std::string::npos && arg.find("..") != std::string::npos) {
    int lo = 0, hi = 0;
    if (std::sscanf(arg.c_str(), "2^-%d..2^-%d", &lo, &hi) != 2 || lo < 0 ||
        hi < lo) {
      throw SchemaError("schedule: expected the form 2^-A..2^-B with B >= A");
    }
    for (int e = lo; e <= hi; ++e) out.push_back(std::ldexp(1.0, -e));
    return out;
  }
  std::stringstream ss(arg);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const double v = std::stod(item, &used);
      while (used < item.size() && std::isspace(static_cast<unsigned char>(item[used]))) ++used;
      if (used != item.size()) throw std::invalid_argument(item);
      out.push_back(v);
    } catch (const std::exception&) {
      throw SchemaError("schedule: not a number: \"" + item + "\"");
    }
  }
  if (out.empty()) {
    throw SchemaError("schedule: empty");
  }
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (!(out[i] > 0.0) || (i > 0 && out[i] >= out[i - 1])) {
      throw SchemaError("schedule: values must be positive and decreasing");
    }
  }
  return out;
}

std::string emit_matrix_json(const Eigen::MatrixXcd& m) {
  std::string out;
  append_matrix(out, m);
  return out;
}

std::string emit_report_json(const DivergenceReport& report) {
  std::string out = "{\"value\":";
  append_extended(out, report.value);
  out += ",\"method\":\"";
  out += report.method;
  out += "\",\"boundary_zero_mass\":";
  append_double(out, report.boundary_zero_mass);
  out += ",\"boundary_one_mass\":";
  append_double(out, report.boundary_one_mass);
  out += ",\"spectrum\":[";
  for (std::size_t k = 0; k < report.spectrum.size(); ++k) {
    if (k) out += ',';
    out += '[';
    append_double(out, report.spectrum[k].t);
    out += ',';
    append_double(out, report.spectrum[k].weight);
    out += ']';
  }
  out += "]}\n";
  return out;
}

std::string emit_reverse_test_json(const ReverseTest& rt) {
  std::string out = "{\"atoms\":[";
  for (std::size_t k = 0; k < rt.atoms.size(); ++k) {
    if (k) out += ',';
    out += "{\"nu\":";
    append_double(out, rt.atoms[k].nu);
    out += ",\"p\":";
    append_double(out, rt.atoms[k].p);
    out += ",\"q\":";
    append_double(out, rt.atoms[k].q);
    out += ",\"D\":";
    append_matrix(out, rt.atoms[k].image.mat());
    out += '}';
  }
  out += "]}\n";
  return out;
}

std::string emit_sequence_csv(const std::vector<SequenceRow>& rows) {
  std::string out = "step,parameter,value,is_infinite\n";
  for (const auto& row : rows) {
    out += std::to_string(row.step);
    out += ',';
    out += row.parameter;
    out += ',';
    if (row.value.is_infinite()) {
      out += ",1\n";
    } else {
      append_double(out, row.value.value());
      out += ",0\n";
    }
  }
  return out;
}

std::string emit_sequence_json(const std::vector<SequenceRow>& rows) {
  std::string out = "{\"rows\":[";
  for (std::size_t k = 0; k < rows.size(); ++k) {
    if (k) out += ',';
    out += "{\"step\":";
    out += std::to_string(rows[k].step);
    out += ",\"parameter\":\"";
    out += rows[k].parameter;
    out += "\",\"value\":";
    append_extended(out, rows[k].value);
    out += '}';
  }
  out += "]}\n";
  return out;
}

}  // namespace qfdiv
