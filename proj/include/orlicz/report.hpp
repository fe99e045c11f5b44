#pragma once

#include <string>

#include <json.hpp>

#include "orlicz/acsob.hpp"

namespace orlicz {

using Json = nlohmann::ordered_json;

// Extended values: finite doubles stay numbers, +inf becomes the string
// "inf" (JSON has no infinity literal and the reports must stay byte-stable).
Json ext_json(double v);

Json to_json(const Point& p);
Json to_json(const NormResult& r);
Json to_json(const MembershipReport& r);
Json to_json(const ConditionReport& r);
Json to_json(const HolderReport& r);
Json to_json(const NormModularReport& r);
Json to_json(const ModulusResult& r, bool include_density = false);
Json to_json(const WitnessReport& r);
Json to_json(const ModulusPropertiesReport& r);
Json to_json(const ACReport& r, bool per_slice = false);
Json to_json(const SobolevReport& r);
Json to_json(const AccReport& r);
Json to_json(const FugledeReport& r);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace orlicz
