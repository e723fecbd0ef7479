#pragma once

#include <string>
#include <vector>

#include "hbl/monad.hpp"

namespace hbl
{

inline constexpr int kMonadSchemaVersion = 1;

/// Versioned JSON text for a monad point. Coefficients are "n" or "n/d" strings, so the
/// round trip is bit-exact. indent < 0 gives the compact form.
std::string monad_to_json(const MonadPoint& m, int indent = -1);

/// Throws Error on schema violations, unknown versions and malformed coefficients.
MonadPoint monad_from_json(const std::string& text);

/// {schema_version, monads: [...]} as written by the sample command.
std::string monad_list_to_json(const std::vector<MonadPoint>& ms, int indent = 2);
std::vector<MonadPoint> monad_list_from_json(const std::string& text);

} // namespace hbl
