#pragma once

// JSON documents for group specs, layouts, actions, decompositions and
// conjugacies. Loading validates every field and names the offending one.

#include <memory>
#include <string>

#include "json.hpp"

#include "nilsmooth/smoothing.hpp"

namespace nilsmooth {

using Json = nlohmann::json;

inline constexpr const char* kGroupSpecSchema = "groupspec-v1";
inline constexpr const char* kLayoutSchema = "layout-v1";
inline constexpr const char* kActionSchema = "action-v1";
inline constexpr const char* kDecompositionSchema = "decomposition-v1";
inline constexpr const char* kConjugacySchema = "conjugacy-v1";

Json to_document(const GroupSpec& spec);
GroupSpec groupspec_from_document(const Json& doc);

Json to_document(const IntervalFamily& family, const LengthAssignment* lengths = nullptr);
IntervalFamily layout_from_document(const Json& doc, LengthAssignment* lengths = nullptr);

Json to_document(const LineAction& action);
LineAction action_from_document(const Json& doc);

Json to_document(const Decomposition& dec);
Decomposition decomposition_from_document(const Json& doc);

/// Breakpoint table of psi: every interval with its source and target span
/// and the data that fixes psi inside it.
Json to_document(const Conjugacy& psi, const LineAction& source);
Conjugacy conjugacy_from_document(const Json& doc, std::shared_ptr<const LineAction> source);

/// Reads a JSON file; a missing or unparsable file is a config error.
Json read_document(const std::string& path);
/// Writes with a trailing newline and fixed indentation.
void write_document(const std::string& path, const Json& doc);
void write_text(const std::string& path, const std::string& text);

}  // namespace nilsmooth
