#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qfdiv/divergences.hpp"
#include "qfdiv/ocf.hpp"
#include "qfdiv/reverse_test.hpp"
#include "qfdiv/states.hpp"

namespace qfdiv {

// Input text that violates the schema: malformed JSON, unknown or missing
// keys, wrong shapes, non-finite numbers.
class SchemaError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Shortest text that round-trips the double (17 significant digits).
std::string format_double(double x);

// Row-major list of rows, each entry [re, im]. Rectangular allowed.
Eigen::MatrixXcd parse_matrix_json(const std::string& text);

struct PairInput {
  PositiveFunctional rho;
  PositiveFunctional sigma;
};

// {"rho": matrix, "sigma": matrix}; both square, Hermitian, PSD.
PairInput parse_pair_json(const std::string& text);

// {"name":"xlogx"} | {"name":"power","alpha":1.5} |
// {"canonical":{"a":..,"b":..,"c":..,"d":..,"atoms":[[s,w],...]}}
OperatorConvexFunction parse_function_json(const std::string& text);

// Accepts a bare builtin name (xlogx, neglog, chi2, square) or the full
// JSON form above.
OperatorConvexFunction parse_function_spec(const std::string& arg);

// {"kraus":[matrix,...]} | {"pinching":[[...],[...]]} | {"compression":[i,...]}
Channel parse_channel_json(const std::string& text, int dim);

// [[[0,1],[2]], [[0,1,2]]] — a list of partitions.
std::vector<Partition> parse_partition_chain(const std::string& text);

// [[0], [0,2], [0,1,2]] — a list of index sets.
std::vector<std::vector<int>> parse_index_chain(const std::string& text);

// "2^-4..2^-20" (consecutive negative powers of two) or a comma-separated
// list of positive decreasing floats.
std::vector<double> parse_schedule(const std::string& arg);

// Deterministic emitters: fixed key order, %.17g floats, "inf" for the
// infinite value, LF line ends.
std::string emit_matrix_json(const Eigen::MatrixXcd& m);
std::string emit_report_json(const DivergenceReport& report);
std::string emit_reverse_test_json(const ReverseTest& rt);

// One row of a sequence table.
struct SequenceRow {
  int step;
  std::string parameter;
  ExtendedReal value;
};

// step,parameter,value,is_infinite; infinite value -> empty cell and flag 1.
std::string emit_sequence_csv(const std::vector<SequenceRow>& rows);
std::string emit_sequence_json(const std::vector<SequenceRow>& rows);

}  // namespace qfdiv
