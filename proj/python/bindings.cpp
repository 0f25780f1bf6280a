#include <pybind11/pybind11.h>
PYBIND11_MODULE(_eozip, m) { m.doc() = "placeholder"; }
