/*
 * AnimLayout - structured animated-layout toolkit
 *
 * Copyright 2026 AnimLayout Authors.
 * Licensed under the terms of the Apache 2.0 License.
 * See LICENSE file in the project root for terms.
 */

#include "animlayout/backend.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include <httplib.h>
#include <json.hpp>

#include "animlayout/hash.hpp"
#include "animlayout/pipeline.hpp"

namespace animlayout {

using nlohmann::json;

// ---- HTTP backend ------------------------------------------------------

HttpBackend::HttpBackend(std::string url, BackendLimits limits) : url_(std::move(url)) {
  limits_ = limits;
}

std::string HttpBackend::complete(const std::string& system_prompt,
                                  const std::string& user_prompt) {
  // Split "scheme://authority/path" into the client base and request path.
  const size_t scheme_end = url_.find("://");
  if (scheme_end == std::string::npos) throw BackendError("malformed backend URL: " + url_);
  const size_t path_start = url_.find('/', scheme_end + 3);
  const std::string base = path_start == std::string::npos ? url_ : url_.substr(0, path_start);
  const std::string path = path_start == std::string::npos ? "/" : url_.substr(path_start);

  httplib::Client client(base);
  const auto seconds = static_cast<time_t>(limits_.timeout.count());
  client.set_connection_timeout(seconds, 0);
  client.set_read_timeout(seconds, 0);
  client.set_write_timeout(seconds, 0);

  httplib::Headers headers;
  if (const char* token = std::getenv("ANIMLAYOUT_BACKEND_TOKEN")) {
    headers.emplace("Authorization", std::string("Bearer ") + token);
  }

  json body;
  body["system"] = system_prompt;
  body["prompt"] = user_prompt;
  body["max_tokens"] = limits_.max_tokens;

  auto res = client.Post(path, headers, body.dump(), "application/json");
  if (!res) {
    throw BackendError("backend unreachable: " + url_ + " (" + httplib::to_string(res.error()) + ")");
  }
  if (res->status != 200) {
    throw BackendError("backend returned status " + std::to_string(res->status) + ": " + url_);
  }
  json reply = json::parse(res->body, nullptr, false);
  if (reply.is_discarded() || !reply.contains("text") || !reply["text"].is_string()) {
    throw BackendError("backend reply lacks a \"text\" field: " + url_);
  }
  return reply["text"].get<std::string>();
}

// ---- mock backend ------------------------------------------------------

namespace {

std::vector<std::string> quoted_strings(const std::string& text) {
  std::vector<std::string> out;
  size_t pos = 0;
  while ((pos = text.find('"', pos)) != std::string::npos) {
    const size_t end = text.find('"', pos + 1);
    if (end == std::string::npos) break;
    std::string q = text.substr(pos + 1, end - pos - 1);
    if (!q.empty()) out.push_back(std::move(q));
    pos = end + 1;
  }
  return out;
}

bool mentions_logo(const std::string& text) {
  std::string lower = text;
  for (char& c : lower) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return lower.find("logo") != std::string::npos;
}

// The section of the user prompt that carries the actual request. Builtin
// templates label it so the rule generator does not mine quotes out of
// upstream ST JSON.
std::string request_section(const std::string& user_prompt, const char* label) {
  size_t begin = user_prompt.find(label);
  begin = begin == std::string::npos ? 0 : begin + std::strlen(label);
  size_t end = user_prompt.find(kReasoningHeader, begin);
  if (end == std::string::npos) end = user_prompt.size();
  return user_prompt.substr(begin, end - begin);
}

std::string rule_banner_st(const std::string& request) {
  const auto quotes = quoted_strings(request);
  const bool logo = mentions_logo(request);
  BannerSt st;
  if (quotes.empty() && !logo) return serialize_st(st);

  Banner banner;
  banner.position = BannerPosition::Bottom;
  banner.bbox = {0, 980, 1920, 100};
  banner.color = {0x22, 0x22, 0x22};
  const size_t n = quotes.size();
  for (size_t i = 0; i < n; ++i) {
    const double dx = n > 1 ? 1600.0 / static_cast<double>(n - 1) : 0.0;
    LayoutObject obj;
    obj.cls = ObjectClass::Text;
    obj.bbox = {10 + static_cast<double>(i) * dx, 990, 300, 80};
    obj.attrs = TextAttrs{quotes[i], Color{0xFF, 0xFF, 0xFF}, std::nullopt};
    banner.objects.push_back(std::move(obj));
  }
  if (logo) {
    LayoutObject obj;
    obj.cls = ObjectClass::Logo;
    obj.bbox = {1700, 990, 80, 80};
    banner.objects.push_back(std::move(obj));
  }
  st.banners.push_back(std::move(banner));
  return serialize_st(st);
}

std::string rule_mainground_st(const std::string& request) {
  const auto quotes = quoted_strings(request);
  MaingroundSt st;
  const size_t n = quotes.size();
  for (size_t i = 0; i < n; ++i) {
    const double dy = n > 1 ? 760.0 / static_cast<double>(n - 1) : 0.0;
    LayoutObject obj;
    obj.cls = ObjectClass::Text;
    obj.bbox = {200, 100 + static_cast<double>(i) * dy, 800, 120};
    obj.attrs = TextAttrs{quotes[i], Color{0x11, 0x11, 0x11}, std::nullopt};
    st.foreground.push_back(std::move(obj));
  }
  if (mentions_logo(request)) {
    LayoutObject obj;
    obj.cls = ObjectClass::Logo;
    obj.bbox = {1500, 100, 300, 300};
    st.foreground.push_back(std::move(obj));
  }
  std::string lower = request;
  for (char& c : lower) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (lower.find("image") != std::string::npos) {
    st.background = {BackgroundKind::Image, {}, "background scene"};
  } else {
    st.background = {BackgroundKind::SolidColor, Color{0xFA, 0xFA, 0xFA}, ""};
  }
  return serialize_st(st);
}

std::string rule_animation_st(const std::string& user_prompt) {
  Animation anim;
  anim.duration = 50;
  try {
    const std::string fragment = extract_json_block(user_prompt);
    json j = json::parse(fragment, nullptr, false);
    if (!j.is_discarded() && j.contains("foreground") && j["foreground"].is_array()) {
      int index = 0;
      for (const auto& obj : j["foreground"]) {
        if (obj.contains("bbox") && obj["bbox"].is_array() && obj["bbox"].size() == 4) {
          const double x = obj["bbox"][0].get<double>();
          const double y = obj["bbox"][1].get<double>();
          const double w = obj["bbox"][2].get<double>();
          const double h = obj["bbox"][3].get<double>();
          ObjectAnimation track;
          track.object_index = index;
          // Slide in from the left, settling in staggered order.
          track.keyframes.push_back({0, {std::max(0.0, x - 100.0), y, w, h}});
          track.keyframes.push_back({std::min(10 + 3 * index, anim.duration - 1), {x, y, w, h}});
          anim.tracks.push_back(std::move(track));
        }
        ++index;
      }
    }
  } catch (const NoJsonFound&) {
    // No foreground in context: an empty animation is still valid.
  }
  return serialize_st(anim);
}

std::string rule_ut(Stage stage, const std::string& request) {
  const auto quotes = quoted_strings(request);
  std::ostringstream out;
  out << "Plan for the " << stage_name(stage) << " stage. ";
  if (quotes.empty()) {
    out << "The request names no on-screen strings, so the layout stays minimal.";
  } else {
    out << "The request names " << quotes.size() << " on-screen string(s):";
    for (const auto& q : quotes) out << "\n- " << q;
  }
  if (mentions_logo(request)) out << "\nA logo placeholder is included.";
  return out.str();
}

}  // namespace

MockBackend::MockBackend(Stage stage, std::optional<std::filesystem::path> canned_dir,
                         BackendLimits limits)
    : stage_(stage), canned_dir_(std::move(canned_dir)) {
  limits_ = limits;
}

void MockBackend::script(const std::string& call, std::string response) {
  script_[call] = std::move(response);
}

std::string MockBackend::file_key(Stage stage, const std::string& call,
                                  const std::string& user_prompt) {
  return stage_name(stage) + "_" + call + "_" + fnv1a64_hex(user_prompt) + ".txt";
}

std::string MockBackend::complete(const std::string& /*system_prompt*/,
                                  const std::string& user_prompt) {
  const bool is_st_call = user_prompt.find(kReasoningHeader) != std::string::npos;
  const std::string call = is_st_call ? "st" : "ut";

  if (auto it = script_.find(call); it != script_.end()) return it->second;

  if (canned_dir_) {
    std::ifstream in(*canned_dir_ / file_key(stage_, call, user_prompt));
    if (in) {
      std::ostringstream content;
      content << in.rdbuf();
      return content.str();
    }
  }

  switch (stage_) {
    case Stage::Banner: {
      const std::string request = request_section(user_prompt, kBannerRequestLabel);
      return is_st_call ? rule_banner_st(request) : rule_ut(stage_, request);
    }
    case Stage::Mainground: {
      const std::string request = request_section(user_prompt, kMaingroundRequestLabel);
      return is_st_call ? rule_mainground_st(request) : rule_ut(stage_, request);
    }
    case Stage::Animation:
      return is_st_call ? rule_animation_st(user_prompt) : rule_ut(stage_, "");
    case Stage::Full:
      break;
  }
  throw BackendError("mock backend bound to an invalid stage");
}

}  // namespace animlayout
