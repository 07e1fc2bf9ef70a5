#pragma once

#define MEINARDUS_VERSION_MAJOR 0
#define MEINARDUS_VERSION_MINOR 1
#define MEINARDUS_VERSION_PATCH 0

namespace meinardus {
inline constexpr const char* version_string = "0.1.0";
}
