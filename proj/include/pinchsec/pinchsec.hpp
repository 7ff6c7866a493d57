#pragma once

#include "pinchsec/channel.hpp"
#include "pinchsec/config.hpp"
#include "pinchsec/config_file.hpp"
#include "pinchsec/coupling.hpp"
#include "pinchsec/montecarlo.hpp"
#include "pinchsec/optimizer.hpp"
#include "pinchsec/secrecy.hpp"
#include "pinchsec/sinr.hpp"
#include "pinchsec/sweep.hpp"
