#pragma once

#include <iosfwd>

namespace eqlab::cli {

// Exit codes
constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kUnsound = 2;
constexpr int kNegativeDelta1 = 3;
constexpr int kCorruptInput = 4;
constexpr int kCertificateFailed = 5;
constexpr int kStageFailed = 6;

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace eqlab::cli
