#pragma once

#include <json.hpp>
#include <string>
#include <variant>
#include <vector>

#include "engulf.hpp"
#include "exhaustion.hpp"
#include "geometry.hpp"
#include "isotopy.hpp"
#include "labeling.hpp"
#include "tangle.hpp"

namespace ptk::io {

// One versioned JSON schema shared by every module.  Every document carries
// {"schema": "polytangle/1", "type": "<name>", ...}.
inline constexpr const char* kSchema = "polytangle/1";

struct SchemaError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using AnyValue =
    std::variant<tangle::ThetaComplex, tangle::Subtangle, engulf::OccupancyTrace,
                 engulf::ExcellenceCertificate, tangle::QuotientTangle, iso::NestingForest,
                 iso::PushSchedule, iso::AnnulusTrace, iso::MonotonizeResult, iso::PatchTree,
                 iso::PatchResult, exh::ExhaustionDescriptor, label::BinaryLabeling,
                 std::vector<label::BinaryLabeling>, geom::DiagramCode,
                 std::vector<geom::Polyline3>>;

std::string type_name(const AnyValue& v);

nlohmann::json to_json(const AnyValue& v);
AnyValue value_from_json(const nlohmann::json& j);

std::string serialize(const AnyValue& v);
AnyValue deserialize(const std::string& text);

// structural equality, used by the round-trip tests
bool equal(const AnyValue& a, const AnyValue& b);

}  // namespace ptk::io
