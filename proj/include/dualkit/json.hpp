#pragma once

#include <json.hpp>

namespace dualkit {
using json = nlohmann::json;
}
