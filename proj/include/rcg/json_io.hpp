#ifndef RCG_JSON_IO_HPP_
#define RCG_JSON_IO_HPP_

#include "rcg/core.hpp"

#include <string>
#include <string_view>

namespace rcg
{

/**
 * @brief Decodes and validates a set description.
 *
 *   ccg:       {"kind":"ccg","c":[..],"G":[[row],..],"groups":[{"idx":[..],"p":"1"|"2"|"inf","r":x}],
 *               "A":[[row],..],"b":[..]}
 *   rcg:       {"kind":"rcg","outer":<ccg>,"inner":<ccg>}
 *   halfspace: {"kind":"halfspace","h":[..],"f":x}
 *
 * G and A are row-major. Group indices are 1-based. "r" defaults to 1.
 * Unknown keys raise ParseError.
 */
SetValue parse_set_json(std::string_view text);

Ccg parse_ccg_json(std::string_view text);
Rcg parse_rcg_json(std::string_view text);

/// Canonical encoding (fixed key order, shortest round-trip numbers).
std::string emit_set_json(const SetValue& value, int indent = -1);

std::string kind_name(const SetValue& value);

} // namespace rcg

#endif
