#pragma once

#include <stdexcept>
#include <string>

namespace iscatter {

// Error taxonomy shared by all pipelines; exit-code mapping lives in the CLI.
enum class errc {
  invalid_input,
  schema,
  data_not_realizable,
  solver_failure,
  nonconvergence,
};

class error : public std::runtime_error {
public:
  error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  errc code() const noexcept { return code_; }

private:
  errc code_;
};

inline void require(bool cond, errc code, const std::string& msg) {
  if (!cond) throw error(code, msg);
}

}  // namespace iscatter
