#ifndef CARNOT_GROUP_JSON_HPP
#define CARNOT_GROUP_JSON_HPP

#include "carnot/group.hpp"

#include "json.hpp"

namespace carnot {

/**
 * Group descriptor documents:
 *   {"kind": "euclidean", "n": 3}
 *   {"kind": "heisenberg", "n": 1}
 *   {"kind": "htype", "m": 4, "k": 3, "J": [[16 row-major entries], ...], "norm_kappa": 16}
 *   {"kind": "htype", "preset": "quaternionic", "norm_kappa": 16}
 */
nlohmann::json group_to_json(const CarnotGroup& g);
/// Throws InvalidParameter on malformed documents and NotHType on bad structure maps.
CarnotGroup group_from_json(const nlohmann::json& doc);

} // namespace carnot

#endif // CARNOT_GROUP_JSON_HPP
