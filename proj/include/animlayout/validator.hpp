/*
 * AnimLayout - structured animated-layout toolkit
 *
 * Copyright 2026 AnimLayout Authors.
 * Licensed under the terms of the Apache 2.0 License.
 * See LICENSE file in the project root for terms.
 */

#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "animlayout/st_model.hpp"

namespace animlayout {

/// Failure taxonomy for the failure-rate metric. A failure maps to exactly
/// one kind, the first applicable in this order.
enum class FailureKind {
  JsonParse,
  MissingKey,
  WrongHierarchy,
  MissingRequestedElement,
  InvariantBreach,
};

std::string failure_kind_name(FailureKind kind);

struct Failure {
  FailureKind kind;
  std::string path;
  std::string message;

  bool operator==(const Failure&) const = default;
};

struct ValidationReport {
  bool ok = false;
  std::vector<Failure> failures;
  Stage stage = Stage::Full;

  std::string to_json() const;
};

/// One element the user prompt asked for. Text elements match when some
/// text object's raw_text contains `expected_text` case-insensitively;
/// logo elements match when any logo object exists.
struct RequestedElement {
  ObjectClass cls;
  std::string expected_text;  // non-empty

  bool operator==(const RequestedElement&) const = default;
};

struct PromptSpec {
  std::vector<RequestedElement> requested_elements;
};

/// Pull requested elements out of prompt text: every double-quoted string
/// becomes a text requirement, a mention of "logo" becomes a logo one.
PromptSpec prompt_spec_from_prompts(const std::string& banner_prompt,
                                    const std::string& mainground_prompt);

/// Structural validation of raw generator output. Failures are data, never
/// exceptions; a parse failure preempts the requested-element check.
ValidationReport validate_stage(const std::string& text, Stage stage,
                                const std::optional<PromptSpec>& spec = std::nullopt,
                                const Canvas& canvas = Canvas{});

/// count(!ok) / n. Throws std::invalid_argument on an empty list.
double failure_rate(std::span<const ValidationReport> reports);

}  // namespace animlayout
