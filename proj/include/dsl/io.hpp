#pragma once

#include <Eigen/Dense>
#include <json.hpp>
#include <string>

#include "dsl/operators.hpp"
#include "dsl/spectra.hpp"

namespace dsl {

/// Fixed 12-significant-digit scientific formatting ('.'-decimal, LF rows are
/// the caller's concern). Used for every CSV number so goldens are bit-exact.
std::string fmt_sig12(double x);

/// Binary matrix dump: 32-byte header {magic "DSL1", u32 dtype, u64 rows,
/// u64 cols, 8 reserved bytes}, then column-major 8-byte floats (re/im
/// interleaved when dtype = 1). A sidecar <path>.json records grid/params.
void write_matrix_dump(const std::string& path, const DiscreteOperator& op);

struct MatrixDump {
  Eigen::MatrixXd real;     // filled when dtype = 0
  Eigen::MatrixXcd cplx;    // filled when dtype = 1
  bool is_complex = false;
  nlohmann::json sidecar;
};

MatrixDump read_matrix_dump(const std::string& path);

/// SpectrumReport JSON, schema 1.
nlohmann::json report_to_json(const SpectrumReport& report);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace dsl
