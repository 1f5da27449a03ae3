#pragma once

#define SURFQ_VERSION_STRING "0.1.0"
