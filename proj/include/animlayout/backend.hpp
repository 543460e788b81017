/*
 * AnimLayout - structured animated-layout toolkit
 *
 * Copyright 2026 AnimLayout Authors.
 * Licensed under the terms of the Apache 2.0 License.
 * See LICENSE file in the project root for terms.
 */

#pragma once

#include <chrono>
#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>

#include "animlayout/st_model.hpp"

namespace animlayout {

/// Transport-level failure: endpoint unreachable, bad status, bad payload.
class BackendError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct BackendLimits {
  std::chrono::seconds timeout{120};
  int max_retries = 2;
  int max_tokens = 2048;
};

/// Opaque text-in/text-out completion source.
class GeneratorBackend {
 public:
  virtual ~GeneratorBackend() = default;
  virtual std::string complete(const std::string& system_prompt,
                               const std::string& user_prompt) = 0;
  virtual std::string name() const = 0;
  virtual const BackendLimits& limits() const { return limits_; }
  void set_limits(const BackendLimits& limits) { limits_ = limits; }

 protected:
  BackendLimits limits_;
};

/// POSTs {"system", "prompt", "max_tokens"} to a completion endpoint and
/// expects {"text": ...}. The bearer token comes from
/// ANIMLAYOUT_BACKEND_TOKEN when that variable is set.
class HttpBackend : public GeneratorBackend {
 public:
  explicit HttpBackend(std::string url, BackendLimits limits = {});

  std::string complete(const std::string& system_prompt,
                       const std::string& user_prompt) override;
  std::string name() const override { return "http:" + url_; }

 private:
  std::string url_;
};

/// Deterministic stand-in for the three stage experts. Responses resolve in
/// order: an in-memory script entry, a canned file
/// `<stage>_<ut|st>_<fnv1a64(user_prompt)>.txt` in the response directory,
/// then a rule generator that derives a minimal valid ST from the quoted
/// strings of the prompt. complete() is a pure function of its inputs.
class MockBackend : public GeneratorBackend {
 public:
  explicit MockBackend(Stage stage, std::optional<std::filesystem::path> canned_dir = std::nullopt,
                       BackendLimits limits = {});

  std::string complete(const std::string& system_prompt,
                       const std::string& user_prompt) override;
  std::string name() const override { return "mock:" + stage_name(stage_); }

  /// Pin the response for one call kind ("ut" or "st"), for fault injection.
  void script(const std::string& call, std::string response);

  /// Canned-file key for a prompt, e.g. "banner_st_0123456789abcdef.txt".
  static std::string file_key(Stage stage, const std::string& call,
                              const std::string& user_prompt);

 private:
  Stage stage_;
  std::optional<std::filesystem::path> canned_dir_;
  std::map<std::string, std::string> script_;
};

}  // namespace animlayout
