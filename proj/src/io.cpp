#include "elastica/io.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace elastica::io {

namespace {

constexpr const char* kTraceHeader =
    "step,t,dt,energy,grad_norm_l2ds,vel_norm_l2dtheta,vel_norm_l2ds,length";

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

double require_finite(const json& j, const char* what) {
  if (!j.is_number()) throw IoError(std::string(what) + ": expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw IoError(std::string(what) + ": non-finite value");
  return v;
}

std::ofstream open_out(const std::string& path, std::ios::openmode mode = {}) {
  std::ofstream out(path, mode);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  return out;
}

std::ifstream open_in(const std::string& path, std::ios::openmode mode = {}) {
  std::ifstream in(path, mode);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  return in;
}

}  // namespace

json curve_to_json(const DiscreteCurve& curve) {
  json points = json::array();
  for (int i = 0; i < curve.samples(); ++i) {
    json row = json::array();
    for (int c = 0; c < curve.dim(); ++c) row.push_back(curve.points()(i, c));
    points.push_back(std::move(row));
  }
  return json{{"dim", curve.dim()},
              {"samples", curve.samples()},
              {"points", std::move(points)}};
}

DiscreteCurve curve_from_json(const json& j) {
  if (!j.contains("dim") || !j.contains("samples") || !j.contains("points"))
    throw IoError("curve: missing dim/samples/points");
  const int dim = j.at("dim").get<int>();
  const int n = j.at("samples").get<int>();
  const json& points = j.at("points");
  if (!points.is_array() || static_cast<int>(points.size()) != n)
    throw IoError("curve: points length disagrees with samples");
  Eigen::MatrixXd p(n, dim);
  for (int i = 0; i < n; ++i) {
    const json& row = points.at(i);
    if (!row.is_array() || static_cast<int>(row.size()) != dim)
      throw IoError("curve: row length disagrees with dim");
    for (int c = 0; c < dim; ++c) p(i, c) = require_finite(row.at(c), "curve point");
  }
  return DiscreteCurve(std::move(p));  // constructor enforces N, dim, regularity
}

void write_curve(const std::string& path, const DiscreteCurve& curve) {
  write_json_file(path, curve_to_json(curve));
}

DiscreteCurve read_curve(const std::string& path) {
  return curve_from_json(read_json_file(path));
}

json field_to_json(const NormalField& field) {
  const Eigen::MatrixXd& v = field.values();
  json values = json::array();
  for (int i = 0; i < v.rows(); ++i) {
    json row = json::array();
    for (int c = 0; c < v.cols(); ++c) row.push_back(v(i, c));
    values.push_back(std::move(row));
  }
  return json{{"dim", v.cols()}, {"samples", v.rows()}, {"values", std::move(values)}};
}

void write_field(const std::string& path, const NormalField& field) {
  write_json_file(path, field_to_json(field));
}

void write_trace(const std::string& path, const FlowTrace& trace) {
  std::ofstream out = open_out(path);
  out << kTraceHeader << '\n';
  for (const TraceRow& r : trace) {
    out << r.step << ',' << fmt(r.t) << ',' << fmt(r.dt) << ',' << fmt(r.energy)
        << ',' << fmt(r.grad_norm_l2ds) << ',' << fmt(r.vel_norm_l2dtheta) << ','
        << fmt(r.vel_norm_l2ds) << ',' << fmt(r.length) << '\n';
  }
  if (!out) throw IoError("failed writing trace to '" + path + "'");
}

FlowTrace read_trace(const std::string& path) {
  std::ifstream in = open_in(path);
  std::string line;
  if (!std::getline(in, line) || line != kTraceHeader)
    throw IoError("trace '" + path + "': bad or missing header");
  FlowTrace trace;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string cell;
    double v[8];
    for (int c = 0; c < 8; ++c) {
      if (!std::getline(ss, cell, ','))
        throw IoError("trace '" + path + "': short row");
      v[c] = std::stod(cell);
      if (!std::isfinite(v[c])) throw IoError("trace '" + path + "': non-finite value");
    }
    trace.push_back({static_cast<long>(v[0]), v[1], v[2], v[3], v[4], v[5], v[6], v[7]});
  }
  return trace;
}

json fit_to_json(const LojaFit& fit) {
  return json{{"alpha", fit.alpha},
              {"C", fit.c},
              {"window", json{{"g_min", fit.g_min}, {"g_max", fit.g_max}}},
              {"residual", fit.residual},
              {"points_used", fit.points_used},
              {"violations", fit.violations}};
}

void write_fit(const std::string& path, const LojaFit& fit) {
  write_json_file(path, fit_to_json(fit));
}

json state_to_json(const FlowState& state) {
  return json{{"curve", curve_to_json(state.curve)},
              {"t", state.t},
              {"energy", state.energy},
              {"grad_norm_l2ds", state.grad_norm_l2ds},
              {"dt_last", state.dt_last},
              {"step_count", state.step_count},
              {"accept_streak", state.accept_streak}};
}

FlowState state_from_json(const json& j) {
  FlowState state{curve_from_json(j.at("curve"))};
  state.t = require_finite(j.at("t"), "state.t");
  state.energy = require_finite(j.at("energy"), "state.energy");
  state.grad_norm_l2ds = require_finite(j.at("grad_norm_l2ds"), "state.grad_norm_l2ds");
  state.dt_last = require_finite(j.at("dt_last"), "state.dt_last");
  state.step_count = j.at("step_count").get<long>();
  state.accept_streak = j.at("accept_streak").get<int>();
  return state;
}

void write_state(const std::string& path, const FlowState& state) {
  write_json_file(path, state_to_json(state));
}

FlowState read_state(const std::string& path) {
  return state_from_json(read_json_file(path));
}

void write_operator(const std::string& path, const OperatorMatrix& op) {
  std::ofstream out = open_out(path, std::ios::binary);
  const std::uint64_t m = static_cast<std::uint64_t>(op.form.rows());
  out.write(reinterpret_cast<const char*>(&m), sizeof(m));
  for (std::uint64_t i = 0; i < m; ++i)
    for (std::uint64_t j = 0; j < m; ++j) {
      const double v = op.form(i, j);
      out.write(reinterpret_cast<const char*>(&v), sizeof(v));
    }
  for (std::uint64_t i = 0; i < m; ++i) {
    const double v = op.weight(i);
    out.write(reinterpret_cast<const char*>(&v), sizeof(v));
  }
  if (!out) throw IoError("failed writing operator to '" + path + "'");
}

OperatorMatrix read_operator(const std::string& path) {
  std::ifstream in = open_in(path, std::ios::binary);
  std::uint64_t m = 0;
  in.read(reinterpret_cast<char*>(&m), sizeof(m));
  if (!in || m == 0 || m > (1u << 20))
    throw IoError("operator '" + path + "': bad dimension header");
  OperatorMatrix op;
  op.form.resize(m, m);
  for (std::uint64_t i = 0; i < m; ++i)
    for (std::uint64_t j = 0; j < m; ++j)
      in.read(reinterpret_cast<char*>(&op.form(i, j)), sizeof(double));
  op.weight.resize(m);
  for (std::uint64_t i = 0; i < m; ++i)
    in.read(reinterpret_cast<char*>(&op.weight(i)), sizeof(double));
  if (!in) throw IoError("operator '" + path + "': truncated file");
  return op;
}

json read_json_file(const std::string& path) {
  std::ifstream in = open_in(path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw IoError("cannot parse '" + path + "': " + e.what());
  }
  return j;
}

void write_json_file(const std::string& path, const json& j) {
  std::ofstream out = open_out(path);
  out << j.dump(2) << '\n';
  if (!out) throw IoError("failed writing '" + path + "'");
}

}  // namespace elastica::io
