#pragma once

#define ERGMBAYES_VERSION "0.1.0"
