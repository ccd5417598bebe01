#include "dsl/io.hpp"

#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace dsl {

std::string fmt_sig12(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.11e", x);
  return buf;
}

namespace {

constexpr char kMagic[4] = {'D', 'S', 'L', '1'};

nlohmann::json params_json(const ModelParams& p) {
  return {{"m", p.m}, {"p", p.p}, {"omega", p.omega}, {"mu", p.mu}};
}

nlohmann::json grid_json(const Grid& g) {
  return {{"half_width", g.half_width}, {"n_points", g.n_points}};
}

}  // namespace

void write_matrix_dump(const std::string& path, const DiscreteOperator& op) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path);
  const uint32_t dtype = 0;  // all assemblies are real in this basis
  const uint64_t rows = op.matrix.rows();
  const uint64_t cols = op.matrix.cols();
  char header[32] = {};
  std::memcpy(header, kMagic, 4);
  std::memcpy(header + 4, &dtype, 4);
  std::memcpy(header + 8, &rows, 8);
  std::memcpy(header + 16, &cols, 8);
  f.write(header, 32);
  f.write(reinterpret_cast<const char*>(op.matrix.data()),
          static_cast<std::streamsize>(rows * cols * sizeof(double)));
  if (!f) throw std::runtime_error("short write to " + path);

  nlohmann::json sidecar = {{"label", op.label},
                            {"params", params_json(op.params)},
                            {"grid", grid_json(op.grid)},
                            {"components", op.components}};
  write_text_file(path + ".json", sidecar.dump(2) + "\n");
}

MatrixDump read_matrix_dump(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path);
  char header[32];
  f.read(header, 32);
  if (!f || std::memcmp(header, kMagic, 4) != 0)
    throw std::runtime_error("bad matrix dump header in " + path);
  uint32_t dtype = 0;
  uint64_t rows = 0, cols = 0;
  std::memcpy(&dtype, header + 4, 4);
  std::memcpy(&rows, header + 8, 8);
  std::memcpy(&cols, header + 16, 8);

  MatrixDump out;
  out.is_complex = dtype == 1;
  if (out.is_complex) {
    out.cplx.resize(rows, cols);
    f.read(reinterpret_cast<char*>(out.cplx.data()),
           static_cast<std::streamsize>(rows * cols * 2 * sizeof(double)));
  } else {
    out.real.resize(rows, cols);
    f.read(reinterpret_cast<char*>(out.real.data()),
           static_cast<std::streamsize>(rows * cols * sizeof(double)));
  }
  if (!f) throw std::runtime_error("short read from " + path);

  std::ifstream sidecar(path + ".json");
  if (sidecar) sidecar >> out.sidecar;
  return out;
}

nlohmann::json report_to_json(const SpectrumReport& report) {
  nlohmann::json evs = nlohmann::json::array();
  for (const auto& e : report.entries) {
    nlohmann::json row = {{"re", e.re},
                          {"im", e.im},
                          {"class", to_string(e.cls)},
                          {"localization", e.localization}};
    if (e.residual >= 0.0)
      row["residual"] = e.residual;
    else
      row["residual"] = nullptr;
    evs.push_back(std::move(row));
  }
  return {{"schema", 1},
          {"params", params_json(report.params)},
          {"grid", grid_json(report.grid)},
          {"eigenvalues", std::move(evs)},
          {"meta",
           {{"solver", report.solver},
            {"elapsed_ms", report.elapsed_ms},
            {"label", report.label}}}};
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);  // binary: keep LF on every platform
  if (!f) throw std::runtime_error("cannot open " + path);
  f << content;
  if (!f) throw std::runtime_error("short write to " + path);
}

}  // namespace dsl
