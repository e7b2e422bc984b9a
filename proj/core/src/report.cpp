#include <sstream>

#include "widthkit/conversions.hpp"

namespace widthkit {

std::string ConversionReport::csv_header() {
  return "pass,s_in,w_in,s_out,w_out,depth,bound_value,bound_ok";
}

std::string ConversionReport::csv_row() const {
  std::ostringstream os;
  os << pass << ',' << s_in << ',' << w_in << ',' << s_out << ',' << w_out << ',' << depth << ','
     << bound_value << ',' << (bound_ok ? 1 : 0);
  return os.str();
}

}  // namespace widthkit
