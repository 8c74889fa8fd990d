#pragma once

#define SEMIOVAL_VERSION "1.0.0"
