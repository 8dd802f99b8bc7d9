#include "sortlab/reference_tables.hpp"

namespace sortlab::reference {

const PublishedTable& insertion_table() {
  static const PublishedTable table{
      "insertion",
      {{{"n", 2, 0.1901147, 11457.81, 0.000},
        {"s", 2, 0.0000734, 4.42, 0.017},
        {"m", 2, 0.0000927, 5.58, 0.006},
        {"n*s", 4, 0.0000210, 0.63, 0.642},
        {"n*m", 4, 0.0000888, 2.68, 0.041},
        {"s*m", 4, 0.0001779, 5.36, 0.001},
        {"n*s*m", 8, 0.0002484, 3.74, 0.002}}},
      54,
      0.0004480,
      80,
      0.1912649,
      0.00288033,
      99.77,
      99.65};
  return table;
}

const PublishedTable& shift_insertion_table() {
  static const PublishedTable table{
      "shift_insertion",
      {{{"n", 2, 0.1523912, 11868.93, 0.000},
        {"s", 2, 0.0001352, 10.53, 0.000},
        {"m", 2, 0.0001962, 15.28, 0.000},
        {"n*s", 4, 0.0002306, 8.98, 0.000},
        {"n*m", 4, 0.0000618, 2.40, 0.061},
        {"s*m", 4, 0.0001049, 4.08, 0.006},
        {"n*s*m", 8, 0.0002109, 4.11, 0.001}}},
      54,
      0.0003467,
      80,
      0.1536774,
      0.00253372,
      99.77,
      99.67};
  return table;
}

}  // namespace sortlab::reference
