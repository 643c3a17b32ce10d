#include "ladder/observables.hpp"

#include <stdexcept>

namespace ladder {

std::string to_string(Source s) {
  switch (s) {
    case Source::closed_form: return "closed_form";
    case Source::basis_sum: return "basis_sum";
    case Source::oracle: return "oracle";
  }
  throw std::logic_error("unknown source");
}

Source source_from_string(const std::string& s) {
  if (s == "closed_form") return Source::closed_form;
  if (s == "basis_sum") return Source::basis_sum;
  if (s == "oracle") return Source::oracle;
  throw std::invalid_argument("unknown observable source: " + s);
}

}  // namespace ladder
