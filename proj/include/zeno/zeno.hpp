#pragma once

#include <zeno/convergence.hpp>
#include <zeno/errors.hpp>
#include <zeno/oscillator.hpp>
#include <zeno/protocols.hpp>
#include <zeno/quantum.hpp>
#include <zeno/random.hpp>

namespace zeno {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace zeno
