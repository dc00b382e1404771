#include "subshear/tolerances.hpp"

#include <cstdlib>
#include <stdexcept>

#include "subshear/errors.hpp"

namespace subshear {

Tolerances Tolerances::from_environment() {
  Tolerances tol;
  if (const char* env = std::getenv("SUBSHEAR_TOL_UMB"); env != nullptr && *env != '\0') {
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end == env || *end != '\0' || !(v > 0))
      throw ConfigError(std::string("SUBSHEAR_TOL_UMB: expected a positive number, got '") + env +
                        "'");
    tol.umb = v;
  }
  return tol;
}

void Tolerances::set(const std::string& key, double value) {
  if (!(value > 0)) throw ConfigError("--tol " + key + ": tolerance must be > 0");
  if (key == "sym")
    sym = value;
  else if (key == "chris")
    chris = value;
  else if (key == "eig")
    eig = value;
  else if (key == "inv")
    inv = value;
  else if (key == "w")
    w = value;
  else if (key == "umb")
    umb = value;
  else if (key == "pd")
    pd = value;
  else
    throw ConfigError("--tol: unknown tolerance '" + key + "' (expected sym, chris, eig, inv, w, umb, pd)");
}

}  // namespace subshear
