#pragma once

#include <string>

#include "json.hpp"

#include "elastica/diagnostics.hpp"

namespace elastica::io {

using json = nlohmann::json;

// Curves: {"dim": n, "samples": N, "points": [[...], ...]}.
json curve_to_json(const DiscreteCurve& curve);
DiscreteCurve curve_from_json(const json& j);
void write_curve(const std::string& path, const DiscreteCurve& curve);
DiscreteCurve read_curve(const std::string& path);

// Normal fields, stored with the same layout under "values".
json field_to_json(const NormalField& field);
void write_field(const std::string& path, const NormalField& field);

// Flow traces as CSV with a fixed header; values survive a round trip.
void write_trace(const std::string& path, const FlowTrace& trace);
FlowTrace read_trace(const std::string& path);

json fit_to_json(const LojaFit& fit);
void write_fit(const std::string& path, const LojaFit& fit);

// Checkpoints carry the full stepper state so a resumed run reproduces the
// uninterrupted one bit for bit.
json state_to_json(const FlowState& state);
FlowState state_from_json(const json& j);
void write_state(const std::string& path, const FlowState& state);
FlowState read_state(const std::string& path);

// Dense operator dump: little-endian u64 dimension M, then M*M row-major
// doubles of the form, then M doubles of the diagonal ds weight.
void write_operator(const std::string& path, const OperatorMatrix& op);
OperatorMatrix read_operator(const std::string& path);

json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const json& j);

}  // namespace elastica::io
