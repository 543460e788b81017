/*
 * AnimLayout - structured animated-layout toolkit
 *
 * Copyright 2026 AnimLayout Authors.
 * Licensed under the terms of the Apache 2.0 License.
 * See LICENSE file in the project root for terms.
 */

#include "animlayout/font.hpp"

#include <algorithm>
#include <stdexcept>

#include "animlayout/maskproc.hpp"

namespace animlayout {

namespace {

// 8x16 console-style glyphs for ASCII 32..126, one row byte per scanline,
// LSB = leftmost pixel. Derived from a DejaVu Sans Mono raster.
constexpr uint8_t kBuiltinGlyphs[95][16] = {
    {0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00},  // ' '
    {0x00, 0x00, 0x00, 0x18, 0x18, 0x18, 0x18, 0x18, 0x18, 0x00, 0x00, 0x18, 0x18, 0x00, 0x00, 0x00},  // '!'
    {0x00, 0x00, 0x00, 0x24, 0x24, 0x24, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00},  // '"'
    {0x00, 0x00, 0x00, 0x48, 0x48, 0x68, 0xfe, 0x24, 0x24, 0x7f, 0x16, 0x12, 0x12, 0x00, 0x00, 0x00},  // '#'
    {0x00, 0x00, 0x00, 0x10, 0x38, 0x1e, 0x16, 0x1e, 0x3c, 0x70, 0x50, 0x76, 0x3c, 0x10, 0x00, 0x00},  // '$'
    {0x00, 0x00, 0x00, 0x04, 0x0f, 0x09, 0x0b, 0x76, 0x3c, 0x72, 0x90, 0xd0, 0x60, 0x00, 0x00, 0x00},  // '%'
    {0x00, 0x00, 0x00, 0x3c, 0x06, 0x04, 0x04, 0x0e, 0x9a, 0xb3, 0x63, 0x62, 0xfc, 0x00, 0x00, 0x00},  // '&'
    {0x00, 0x00, 0x00, 0x18, 0x18, 0x18, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00},  // "'"
    {0x00, 0x00, 0x00, 0x10, 0x10, 0x18, 0x08, 0x08, 0x08, 0x08, 0x08, 0x18, 0x10, 0x10, 0x00, 0x00},  // '('
    {0x00, 0x00, 0x00, 0x08, 0x08, 0x18, 0x10, 0x10, 0x10, 0x10, 0x10, 0x18, 0x08, 0x08, 0x00, 0x00},  // ')'
    {0x00, 0x00, 0x00, 0x00, 0x6e, 0x18, 0x3c, 0x42, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00},  // '*'
    {0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x18, 0x18, 0x7e, 0x18, 0x18, 0x18, 0x00, 0x00, 0x00, 0x00},  // '+'
    {0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x18, 0x18, 0x08, 0x00, 0x00},  // ','
    {0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x3c, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00},  // '-'
    {0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x18, 0x18, 0x00, 0x00, 0x00},  // '.'
    {0x00, 0x00, 0x00, 0x60, 0x20, 0x20, 0x10, 0x10, 0x18, 0x08, 0x0c, 0x04, 0x06, 0x02, 0x00, 0x00},  // '/'
    {0x00, 0x00, 0x00, 0x3c, 0x66, 0x62, 0x42, 0x5a, 0x5a, 0x42, 0x66, 0x26, 0x3c, 0x00, 0x00, 0x00},  // '0'
    {0x00, 0x00, 0x00, 0x1c, 0x10, 0x10, 0x10, 0x10, 0x10, 0x10, 0x10, 0x10, 0x7c, 0x00, 0x00, 0x00},  // '1'
    {0x00, 0x00, 0x00, 0x3e, 0x62, 0x60, 0x60, 0x20, 0x10, 0x18, 0x0c, 0x06, 0x7e, 0x00, 0x00, 0x00},  // '2'
    {0x00, 0x00, 0x00, 0x3e, 0x60, 0x60, 0x60, 0x3c, 0x60, 0x40, 0x40, 0x62, 0x3e, 0x00, 0x00, 0x00},  // '3'
    {0x00, 0x00, 0x00, 0x30, 0x30, 0x28, 0x2c, 0x24, 0x22, 0x7e, 0x7e, 0x20, 0x20, 0x00, 0x00, 0x00},  // '4'
    {0x00, 0x00, 0x00, 0x3e, 0x06, 0x06, 0x1e, 0x30, 0x60, 0x40, 0x60, 0x62, 0x3e, 0x00, 0x00, 0x00},  // '5'
    {0x00, 0x00, 0x00, 0x3c, 0x06, 0x02, 0x3a, 0x66, 0x42, 0x42, 0x42, 0x66, 0x3c, 0x00, 0x00, 0x00},  // '6'
    {0x00, 0x00, 0x00, 0x7e, 0x60, 0x20, 0x30, 0x30, 0x10, 0x18, 0x08, 0x08, 0x0c, 0x00, 0x00, 0x00},  // '7'
    {0x00, 0x00, 0x00, 0x3c, 0x66, 0x42, 0x66, 0x3c, 0x66, 0x42, 0x42, 0x66, 0x3c, 0x00, 0x00, 0x00},  // '8'
    {0x00, 0x00, 0x00, 0x3c, 0x66, 0x62, 0x42, 0x62, 0x66, 0x5c, 0x60, 0x20, 0x1c, 0x00, 0x00, 0x00},  // '9'
    {0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x18, 0x18, 0x00, 0x00, 0x00, 0x18, 0x18, 0x00, 0x00, 0x00},  // ':'
    {0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x18, 0x18, 0x00, 0x00, 0x00, 0x18, 0x18, 0x08, 0x00, 0x00},  // ';'
    {0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x70, 0x1c, 0x07, 0x1c, 0x70, 0x00, 0x00, 0x00, 0x00, 0x00},  // '<'
    {0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x7e, 0x00, 0x7e, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00},  // '='
    {0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x0e, 0x38, 0x60, 0x38, 0x0e, 0x00, 0x00, 0x00, 0x00, 0x00},  // '>'
    {0x00, 0x00, 0x00, 0x3c, 0x60, 0x60, 0x20, 0x10, 0x18, 0x18, 0x00, 0x18, 0x08, 0x00, 0x00, 0x00},  // '?'
    {0x00, 0x00, 0x00, 0x00, 0x7c, 0x46, 0xa2, 0xf9, 0x89, 0x89, 0xd9, 0x33, 0x02, 0x0c, 0x38, 0x00},  // '@'
    {0x00, 0x00, 0x00, 0x18, 0x18, 0x3c, 0x24, 0x24, 0x66, 0x7e, 0x42, 0x42, 0xc3, 0x00, 0x00, 0x00},  // 'A'
    {0x00, 0x00, 0x00, 0x3e, 0x62, 0x42, 0x62, 0x3e, 0x62, 0x42, 0x42, 0x66, 0x3e, 0x00, 0x00, 0x00},  // 'B'
    {0x00, 0x00, 0x00, 0x7c, 0x04, 0x06, 0x02, 0x02, 0x02, 0x02, 0x06, 0x44, 0x78, 0x00, 0x00, 0x00},  // 'C'
    {0x00, 0x00, 0x00, 0x1e, 0x22, 0x62, 0x42, 0x42, 0x42, 0x42, 0x62, 0x32, 0x1e, 0x00, 0x00, 0x00},  // 'D'
    {0x00, 0x00, 0x00, 0x7e, 0x06, 0x06, 0x06, 0x7e, 0x06, 0x06, 0x06, 0x06, 0x7e, 0x00, 0x00, 0x00},  // 'E'
    {0x00, 0x00, 0x00, 0x7e, 0x06, 0x06, 0x06, 0x7e, 0x06, 0x06, 0x06, 0x06, 0x04, 0x00, 0x00, 0x00},  // 'F'
    {0x00, 0x00, 0x00, 0x7c, 0x06, 0x02, 0x02, 0x02, 0x72, 0x42, 0x42, 0x44, 0x78, 0x00, 0x00, 0x00},  // 'G'
    {0x00, 0x00, 0x00, 0x42, 0x42, 0x42, 0x42, 0x7e, 0x42, 0x42, 0x42, 0x42, 0x42, 0x00, 0x00, 0x00},  // 'H'
    {0x00, 0x00, 0x00, 0x7e, 0x18, 0x18, 0x18, 0x18, 0x18, 0x18, 0x18, 0x18, 0x7e, 0x00, 0x00, 0x00},  // 'I'
    {0x00, 0x00, 0x00, 0x3c, 0x20, 0x20, 0x20, 0x20, 0x20, 0x20, 0x20, 0x32, 0x1e, 0x00, 0x00, 0x00},  // 'J'
    {0x00, 0x00, 0x00, 0x42, 0x22, 0x32, 0x1a, 0x0e, 0x16, 0x32, 0x22, 0x62, 0xc2, 0x00, 0x00, 0x00},  // 'K'
    {0x00, 0x00, 0x00, 0x06, 0x06, 0x06, 0x06, 0x06, 0x06, 0x06, 0x06, 0x06, 0x7e, 0x00, 0x00, 0x00},  // 'L'
    {0x00, 0x00, 0x00, 0x67, 0x67, 0x67, 0x5f, 0x5b, 0x5b, 0x43, 0x43, 0x43, 0x42, 0x00, 0x00, 0x00},  // 'M'
    {0x00, 0x00, 0x00, 0x46, 0x46, 0x4e, 0x4a, 0x4a, 0x52, 0x52, 0x72, 0x62, 0x62, 0x00, 0x00, 0x00},  // 'N'
    {0x00, 0x00, 0x00, 0x3c, 0x66, 0x42, 0x42, 0x42, 0x42, 0x42, 0x42, 0x66, 0x3c, 0x00, 0x00, 0x00},  // 'O'
    {0x00, 0x00, 0x00, 0x3e, 0x66, 0x46, 0x46, 0x66, 0x3e, 0x06, 0x06, 0x06, 0x06, 0x00, 0x00, 0x00},  // 'P'
    {0x00, 0x00, 0x00, 0x3c, 0x66, 0x42, 0x42, 0x42, 0x42, 0x42, 0x42, 0x66, 0x3c, 0x20, 0x00, 0x00},  // 'Q'
    {0x00, 0x00, 0x00, 0x3e, 0x62, 0x62, 0x62, 0x3e, 0x3e, 0x22, 0x62, 0x42, 0xc2, 0x00, 0x00, 0x00},  // 'R'
    {0x00, 0x00, 0x00, 0x7c, 0x06, 0x02, 0x06, 0x1c, 0x70, 0x40, 0x40, 0x62, 0x3e, 0x00, 0x00, 0x00},  // 'S'
    {0x00, 0x00, 0x00, 0xff, 0x18, 0x18, 0x18, 0x18, 0x18, 0x18, 0x18, 0x18, 0x18, 0x00, 0x00, 0x00},  // 'T'
    {0x00, 0x00, 0x00, 0x42, 0x42, 0x42, 0x42, 0x42, 0x42, 0x42, 0x42, 0x66, 0x3c, 0x00, 0x00, 0x00},  // 'U'
    {0x00, 0x00, 0x00, 0xc3, 0x42, 0x42, 0x66, 0x24, 0x24, 0x3c, 0x3c, 0x18, 0x18, 0x00, 0x00, 0x00},  // 'V'
    {0x00, 0x00, 0x00, 0x81, 0xc3, 0xc3, 0xdb, 0x5a, 0x5a, 0x76, 0x66, 0x66, 0x66, 0x00, 0x00, 0x00},  // 'W'
    {0x00, 0x00, 0x00, 0x42, 0x66, 0x24, 0x38, 0x18, 0x18, 0x2c, 0x66, 0x42, 0xc3, 0x00, 0x00, 0x00},  // 'X'
    {0x00, 0x00, 0x00, 0xc3, 0x66, 0x24, 0x3c, 0x18, 0x18, 0x18, 0x18, 0x18, 0x18, 0x00, 0x00, 0x00},  // 'Y'
    {0x00, 0x00, 0x00, 0xfe, 0x40, 0x60, 0x30, 0x10, 0x18, 0x0c, 0x04, 0x06, 0xfe, 0x00, 0x00, 0x00},  // 'Z'
    {0x00, 0x00, 0x00, 0x38, 0x08, 0x08, 0x08, 0x08, 0x08, 0x08, 0x08, 0x08, 0x08, 0x18, 0x18, 0x00},  // '['
    {0x00, 0x00, 0x00, 0x02, 0x06, 0x04, 0x0c, 0x08, 0x18, 0x10, 0x10, 0x20, 0x20, 0x60, 0x00, 0x00},  // 'backslash'
    {0x00, 0x00, 0x00, 0x1c, 0x10, 0x10, 0x10, 0x10, 0x10, 0x10, 0x10, 0x10, 0x10, 0x18, 0x18, 0x00},  // ']'
    {0x00, 0x00, 0x00, 0x18, 0x3c, 0x66, 0x42, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00},  // '^'
    {0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0xff},  // '_'
    {0x00, 0x00, 0x04, 0x08, 0x10, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00},  // '`'
    {0x00, 0x00, 0x00, 0x00, 0x00, 0x1c, 0x66, 0x40, 0x7c, 0x66, 0x62, 0x62, 0x5c, 0x00, 0x00, 0x00},  // 'a'
    {0x00, 0x00, 0x00, 0x06, 0x06, 0x3e, 0x6e, 0x46, 0x46, 0x46, 0x46, 0x66, 0x3e, 0x00, 0x00, 0x00},  // 'b'
    {0x00, 0x00, 0x00, 0x00, 0x00, 0x38, 0x4c, 0x06, 0x06, 0x06, 0x06, 0x0c, 0x78, 0x00, 0x00, 0x00},  // 'c'
    {0x00, 0x00, 0x00, 0x60, 0x60, 0x7c, 0x76, 0x62, 0x62, 0x62, 0x62, 0x66, 0x7c, 0x00, 0x00, 0x00},  // 'd'
    {0x00, 0x00, 0x00, 0x00, 0x00, 0x38, 0x64, 0x42, 0x7e, 0x02, 0x02, 0x46, 0x7c, 0x00, 0x00, 0x00},  // 'e'
    {0x00, 0x00, 0x00, 0x70, 0x18, 0x7c, 0x7c, 0x08, 0x08, 0x08, 0x08, 0x08, 0x08, 0x00, 0x00, 0x00},  // 'f'
    {0x00, 0x00, 0x00, 0x00, 0x00, 0x1c, 0x76, 0x62, 0x62, 0x62, 0x62, 0x76, 0x7c, 0x60, 0x3c, 0x08},  // 'g'
    {0x00, 0x00, 0x00, 0x06, 0x06, 0x3e, 0x6e, 0x66, 0x46, 0x46, 0x46, 0x46, 0x42, 0x00, 0x00, 0x00},  // 'h'
    {0x00, 0x00, 0x00, 0x18, 0x00, 0x0c, 0x1c, 0x18, 0x18, 0x18, 0x18, 0x18, 0x7e, 0x00, 0x00, 0x00},  // 'i'
    {0x00, 0x00, 0x00, 0x10, 0x00, 0x1c, 0x1c, 0x10, 0x10, 0x10, 0x10, 0x10, 0x10, 0x10, 0x1c, 0x04},  // 'j'
    {0x00, 0x00, 0x00, 0x06, 0x06, 0x46, 0x26, 0x16, 0x1e, 0x16, 0x26, 0x66, 0x44, 0x00, 0x00, 0x00},  // 'k'
    {0x00, 0x00, 0x00, 0x0e, 0x08, 0x08, 0x08, 0x08, 0x08, 0x08, 0x08, 0x18, 0x70, 0x00, 0x00, 0x00},  // 'l'
    {0x00, 0x00, 0x00, 0x00, 0x00, 0x6c, 0x5a, 0x5a, 0x5a, 0x5a, 0x5a, 0x5a, 0x52, 0x00, 0x00, 0x00},  // 'm'
    {0x00, 0x00, 0x00, 0x00, 0x00, 0x38, 0x6e, 0x66, 0x46, 0x46, 0x46, 0x46, 0x42, 0x00, 0x00, 0x00},  // 'n'
    {0x00, 0x00, 0x00, 0x00, 0x00, 0x18, 0x66, 0x42, 0x42, 0x42, 0x42, 0x66, 0x3c, 0x00, 0x00, 0x00},  // 'o'
    {0x00, 0x00, 0x00, 0x00, 0x00, 0x38, 0x6e, 0x46, 0x46, 0x46, 0x46, 0x66, 0x3e, 0x06, 0x06, 0x00},  // 'p'
    {0x00, 0x00, 0x00, 0x00, 0x00, 0x1c, 0x66, 0x62, 0x42, 0x42, 0x62, 0x66, 0x7c, 0x40, 0x40, 0x00},  // 'q'
    {0x00, 0x00, 0x00, 0x00, 0x00, 0x60, 0x1c, 0x0c, 0x0c, 0x0c, 0x0c, 0x0c, 0x04, 0x00, 0x00, 0x00},  // 'r'
    {0x00, 0x00, 0x00, 0x00, 0x00, 0x38, 0x24, 0x06, 0x1c, 0x38, 0x60, 0x60, 0x3c, 0x00, 0x00, 0x00},  // 's'
    {0x00, 0x00, 0x00, 0x08, 0x08, 0x3e, 0x3e, 0x08, 0x08, 0x08, 0x08, 0x18, 0x70, 0x00, 0x00, 0x00},  // 't'
    {0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x46, 0x46, 0x46, 0x46, 0x66, 0x66, 0x7c, 0x00, 0x00, 0x00},  // 'u'
    {0x00, 0x00, 0x00, 0x00, 0x00, 0x42, 0x42, 0x66, 0x24, 0x24, 0x3c, 0x18, 0x18, 0x00, 0x00, 0x00},  // 'v'
    {0x00, 0x00, 0x00, 0x00, 0x00, 0x81, 0x81, 0xc3, 0x5a, 0x5a, 0x7e, 0x66, 0x24, 0x00, 0x00, 0x00},  // 'w'
    {0x00, 0x00, 0x00, 0x00, 0x00, 0x42, 0x66, 0x3c, 0x18, 0x18, 0x3c, 0x66, 0x42, 0x00, 0x00, 0x00},  // 'x'
    {0x00, 0x00, 0x00, 0x00, 0x00, 0x42, 0x42, 0x66, 0x24, 0x2c, 0x38, 0x18, 0x18, 0x08, 0x0c, 0x04},  // 'y'
    {0x00, 0x00, 0x00, 0x00, 0x00, 0x3c, 0x7c, 0x20, 0x10, 0x08, 0x0c, 0x06, 0x7e, 0x00, 0x00, 0x00},  // 'z'
    {0x00, 0x00, 0x00, 0x30, 0x18, 0x18, 0x18, 0x18, 0x0e, 0x08, 0x18, 0x18, 0x18, 0x18, 0x70, 0x00},  // '{'
    {0x00, 0x00, 0x00, 0x18, 0x18, 0x18, 0x18, 0x18, 0x18, 0x18, 0x18, 0x18, 0x18, 0x18, 0x18, 0x18},  // '|'
    {0x00, 0x00, 0x00, 0x0e, 0x18, 0x18, 0x18, 0x18, 0x30, 0x10, 0x18, 0x18, 0x18, 0x18, 0x0e, 0x00},  // '}'
    {0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x7e, 0x20, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00},  // '~'
};

}  // namespace

int GlyphFont::advance(int size) const {
  return std::max(1, (cell_w * size + cell_h / 2) / cell_h);
}

bool GlyphFont::pixel(char c, int size, int px, int py) const {
  if (!covered(c)) return false;
  const int adv = advance(size);
  if (px < 0 || py < 0 || px >= adv || py >= size) return false;
  const int fx = px * cell_w / adv;
  const int fy = py * cell_h / size;
  return (rows(c)[static_cast<size_t>(fy)] >> fx) & 1;
}

const GlyphFont& builtin_font() {
  static const GlyphFont font = [] {
    GlyphFont f;
    f.cell_w = 8;
    f.cell_h = 16;
    f.glyphs.resize(95);
    for (size_t i = 0; i < 95; ++i) {
      f.glyphs[i].assign(kBuiltinGlyphs[i], kBuiltinGlyphs[i] + 16);
    }
    return f;
  }();
  return font;
}

GlyphFont load_font_strip(const std::filesystem::path& pgm_path) {
  const IdMask strip = read_pgm(pgm_path);
  if (strip.width % 95 != 0) {
    throw std::runtime_error("font strip width must be a multiple of 95: " + pgm_path.string());
  }
  GlyphFont font;
  font.cell_w = strip.width / 95;
  font.cell_h = strip.height;
  if (font.cell_w > 8) throw std::runtime_error("font strip cells wider than 8 px are unsupported");
  font.glyphs.resize(95);
  for (int g = 0; g < 95; ++g) {
    font.glyphs[static_cast<size_t>(g)].resize(static_cast<size_t>(font.cell_h), 0);
    for (int y = 0; y < font.cell_h; ++y) {
      uint8_t bits = 0;
      for (int x = 0; x < font.cell_w; ++x) {
        if (strip.at(g * font.cell_w + x, y) != 0) bits |= static_cast<uint8_t>(1u << x);
      }
      font.glyphs[static_cast<size_t>(g)][static_cast<size_t>(y)] = bits;
    }
  }
  return font;
}

}  // namespace animlayout
