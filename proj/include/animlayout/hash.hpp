/*
 * AnimLayout - structured animated-layout toolkit
 *
 * Copyright 2026 AnimLayout Authors.
 * Licensed under the terms of the Apache 2.0 License.
 * See LICENSE file in the project root for terms.
 */

#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace animlayout {

/// FNV-1a, 64 bit. Keys canned mock responses and background image files.
constexpr uint64_t fnv1a64(std::string_view data) {
  uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

/// Lowercase 16-digit hex of fnv1a64.
std::string fnv1a64_hex(std::string_view data);

}  // namespace animlayout
