/*
 * AnimLayout - structured animated-layout toolkit
 *
 * Copyright 2026 AnimLayout Authors.
 * Licensed under the terms of the Apache 2.0 License.
 * See LICENSE file in the project root for terms.
 */

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "animlayout/backend.hpp"
#include "animlayout/st_model.hpp"
#include "animlayout/validator.hpp"

namespace animlayout {

/// Header spliced above the reasoning text when it is fed back into the
/// structured call. Its presence in a user prompt is what tells the mock
/// backend it is serving the second call of a stage.
inline constexpr const char* kReasoningHeader = "Design reasoning:";

class NoJsonFound : public std::runtime_error {
 public:
  explicit NoJsonFound(std::string raw)
      : std::runtime_error("no JSON payload found in the model output"),
        raw_output(std::move(raw)) {}

  std::string raw_output;
};

/// Prompt template of one stage. The reasoning call uses persona + task as
/// the system prompt; the structured call appends format_spec. context_slot
/// is the user-prompt skeleton; its placeholders are {banner_prompt},
/// {mainground_prompt}, {banner_st}, {mainground_st} and {ut}.
struct StageTemplate {
  std::string persona;
  std::string task_description;
  std::string context_slot;
  std::string format_spec;

  static StageTemplate load(const std::filesystem::path& path);
};

struct PipelineTemplates {
  StageTemplate banner;
  StageTemplate mainground;
  StageTemplate animation;

  /// Compiled-in defaults (mirrored under templates/ in the source tree).
  static const PipelineTemplates& builtin();
};

/// Throws std::invalid_argument when a placeholder the stage depends on is
/// missing from its template.
void validate_template(Stage stage, const StageTemplate& tmpl);

/// Values available for placeholder substitution at one point of the run.
struct StageContext {
  std::string banner_prompt;
  std::string mainground_prompt;
  std::optional<std::string> banner_st;
  std::optional<std::string> foreground_st;  // fills {mainground_st} for the temporal stage
};

/// Everything one attempt of one stage produced.
struct AttemptTrace {
  std::string ut_system, ut_user, ut_text;
  std::string st_system, st_user;
  std::string raw_st_response;  // verbatim model output of the second call
  std::string st_text;          // extracted JSON payload, empty if none found
  ValidationReport report;
};

struct StageTrace {
  Stage stage = Stage::Banner;
  std::vector<AttemptTrace> attempts;

  bool ok() const { return !attempts.empty() && attempts.back().report.ok; }
};

struct GenerationTrace {
  std::vector<StageTrace> stages;               // Banner, Mainground, Animation order
  std::optional<Stage> failed_stage;            // set when a stage exhausted its retries
  std::optional<ValidationReport> final_report; // assembled-document validation
  bool ok = false;

  std::string to_json() const;
};

struct GenerationResult {
  std::optional<VideoST> document;
  GenerationTrace trace;
};

struct Backends {
  GeneratorBackend* banner = nullptr;    // B
  GeneratorBackend* spatial = nullptr;   // S
  GeneratorBackend* temporal = nullptr;  // T
};

struct RunStageResult {
  std::string ut_text;
  std::string st_text;
};

/// Content of the first fenced code block, else the first balanced-brace
/// substring starting at the first '{'. Throws NoJsonFound otherwise.
std::string extract_json_block(const std::string& text);

enum class RetryDecision { Retry, Abort };

/// Retry only structural failures while the attempt budget lasts. Semantic
/// failures (missing requested elements) are recorded, never retried.
RetryDecision retry_policy(const ValidationReport& report, int attempt, int max_retries);

/// The two calls of one stage: reasoning first, then structured output with
/// the reasoning in context. Fills `attempt` as it goes so failed calls
/// still land in the trace. Throws NoJsonFound / BackendError.
RunStageResult run_stage(Stage stage, const StageContext& context, GeneratorBackend& backend,
                         const StageTemplate& tmpl, AttemptTrace* attempt = nullptr);

/// The sequential banner -> mainground -> animation procedure. Stage
/// failures end up in the trace (ok=false, no document) rather than as
/// exceptions; transport errors propagate as BackendError.
GenerationResult generate(const std::string& banner_prompt, const std::string& mainground_prompt,
                          const Backends& backends, const PipelineTemplates& templates,
                          const std::optional<PromptSpec>& spec = std::nullopt,
                          const Canvas& canvas = Canvas{});

}  // namespace animlayout
