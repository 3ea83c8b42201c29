#include "jetnf/report.hpp"

namespace jetnf {}
