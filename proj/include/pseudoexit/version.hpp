#pragma once

#define PSEUDOEXIT_VERSION "0.1.0"

namespace pseudoexit {
inline const char* version() { return PSEUDOEXIT_VERSION; }
}
