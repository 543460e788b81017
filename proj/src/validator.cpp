/*
 * AnimLayout - structured animated-layout toolkit
 *
 * Copyright 2026 AnimLayout Authors.
 * Licensed under the terms of the Apache 2.0 License.
 * See LICENSE file in the project root for terms.
 */

#include "animlayout/validator.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

#include <json.hpp>

namespace animlayout {

using nlohmann::json;

std::string failure_kind_name(FailureKind kind) {
  switch (kind) {
    case FailureKind::JsonParse: return "json_parse";
    case FailureKind::MissingKey: return "missing_key";
    case FailureKind::WrongHierarchy: return "wrong_hierarchy";
    case FailureKind::MissingRequestedElement: return "missing_requested_element";
    case FailureKind::InvariantBreach: return "invariant_breach";
  }
  return "?";
}

std::string ValidationReport::to_json() const {
  json j;
  j["ok"] = ok;
  j["stage"] = stage_name(stage);
  j["failures"] = json::array();
  for (const Failure& f : failures) {
    j["failures"].push_back({{"kind", failure_kind_name(f.kind)},
                             {"path", f.path},
                             {"message", f.message}});
  }
  return j.dump();
}

namespace {

FailureKind classify(StErrorKind kind) {
  switch (kind) {
    case StErrorKind::JsonSyntax:
      return FailureKind::JsonParse;
    case StErrorKind::MissingKey:
      return FailureKind::MissingKey;
    case StErrorKind::UnknownKey:
    case StErrorKind::WrongType:
      return FailureKind::WrongHierarchy;
    // A string outside its enum domain is a value-level breach, not a
    // structural one.
    case StErrorKind::BadEnum:
    case StErrorKind::InvariantBreach:
      return FailureKind::InvariantBreach;
  }
  return FailureKind::InvariantBreach;
}

std::string lowered(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

void collect_objects(const StFragment& fragment, std::vector<const LayoutObject*>& out) {
  if (const auto* b = std::get_if<BannerSt>(&fragment)) {
    for (const Banner& banner : b->banners)
      for (const LayoutObject& obj : banner.objects) out.push_back(&obj);
  } else if (const auto* m = std::get_if<MaingroundSt>(&fragment)) {
    for (const LayoutObject& obj : m->foreground) out.push_back(&obj);
  } else if (const auto* doc = std::get_if<VideoST>(&fragment)) {
    for (const Banner& banner : doc->banners)
      for (const LayoutObject& obj : banner.objects) out.push_back(&obj);
    for (const LayoutObject& obj : doc->foreground) out.push_back(&obj);
  }
  // Animation fragments carry no objects; requested elements cannot match.
}

}  // namespace

PromptSpec prompt_spec_from_prompts(const std::string& banner_prompt,
                                    const std::string& mainground_prompt) {
  PromptSpec spec;
  for (const std::string* prompt : {&banner_prompt, &mainground_prompt}) {
    size_t pos = 0;
    while ((pos = prompt->find('"', pos)) != std::string::npos) {
      const size_t end = prompt->find('"', pos + 1);
      if (end == std::string::npos) break;
      std::string quoted = prompt->substr(pos + 1, end - pos - 1);
      if (!quoted.empty()) spec.requested_elements.push_back({ObjectClass::Text, quoted});
      pos = end + 1;
    }
    if (lowered(*prompt).find("logo") != std::string::npos) {
      spec.requested_elements.push_back({ObjectClass::Logo, "logo"});
    }
  }
  return spec;
}

ValidationReport validate_stage(const std::string& text, Stage stage,
                                const std::optional<PromptSpec>& spec, const Canvas& canvas) {
  ValidationReport report;
  report.stage = stage;

  StFragment fragment;
  try {
    fragment = parse_st(text, stage, canvas);
  } catch (const StError& e) {
    report.ok = false;
    report.failures.push_back({classify(e.kind()), e.path(), e.message()});
    return report;
  }

  if (spec) {
    std::vector<const LayoutObject*> objects;
    collect_objects(fragment, objects);
    for (const RequestedElement& req : spec->requested_elements) {
      bool found = false;
      for (const LayoutObject* obj : objects) {
        if (obj->cls != req.cls) continue;
        if (req.cls == ObjectClass::Logo) {
          found = true;
        } else if (lowered(obj->attrs->raw_text).find(lowered(req.expected_text)) !=
                   std::string::npos) {
          found = true;
        }
        if (found) break;
      }
      if (!found) {
        report.failures.push_back({FailureKind::MissingRequestedElement, "",
                                   "requested element not found: \"" + req.expected_text + "\""});
      }
    }
  }

  report.ok = report.failures.empty();
  return report;
}

double failure_rate(std::span<const ValidationReport> reports) {
  if (reports.empty()) throw std::invalid_argument("failure_rate: empty report list");
  size_t failed = 0;
  for (const ValidationReport& r : reports)
    if (!r.ok) ++failed;
  return static_cast<double>(failed) / static_cast<double>(reports.size());
}

}  // namespace animlayout
