#pragma once

#include "gg/errors.hpp"

namespace gg {

template <typename Fn>
int guarded(std::ostream& err, Fn&& fn) {
  try {
    return fn();
  } catch (const OracleTooLargeError& e) {
    err << "error: " << e.what() << "\n";
    return kExitOracleTooLarge;
  } catch (const BackendError& e) {
    err << "backend unavailable: " << e.what() << "\n";
    return kExitBackend;
  } catch (const TokenizationError& e) {
    err << "backend error: " << e.what() << "\n";
    return kExitBackend;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  }
}

}  // namespace gg
