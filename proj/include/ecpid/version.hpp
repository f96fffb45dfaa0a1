#pragma once

namespace ecpid {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace ecpid
