#pragma once

#include "catalog.hpp"
#include "convert.hpp"
#include "csv.hpp"
#include "entry.hpp"
#include "error.hpp"
#include "feature_id.hpp"
#include "frame.hpp"
#include "lmf.hpp"
#include "mnemonic.hpp"
#include "table.hpp"
#include "text.hpp"
#include "validate.hpp"
#include "xml.hpp"
