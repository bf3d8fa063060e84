"""Configuration — default budgets and front-end settings from environment variables."""

import os
from dotenv import load_dotenv

load_dotenv()

# Kernel budgets (overridable per call through Context and per run through CLI flags)
MAX_TERMS = int(os.getenv("TRANSSERIES_MAX_TERMS", "30"))
MAX_LOG_DEPTH = int(os.getenv("TRANSSERIES_LOG_DEPTH", "4"))
MAX_EXP_HEIGHT = int(os.getenv("TRANSSERIES_EXP_HEIGHT", "4"))
MAX_FIXPOINT_ITERS = int(os.getenv("TRANSSERIES_FIXPOINT_ITERS", "60"))

# Scalar backend: "rational" or "float"
SCALAR_MODE = os.getenv("TRANSSERIES_COEFF", "rational")
PRECISION_BITS = int(os.getenv("TRANSSERIES_PREC", "128"))
ZERO_TOL = os.getenv("TRANSSERIES_TOL", "1e-30")
# Round float coefficients onto nearby k/720720 rationals (exponents always are)
SNAP_COEFFICIENTS = os.getenv("TRANSSERIES_SNAP", "0") == "1"

LOG_LEVEL = os.getenv("TRANSSERIES_LOG_LEVEL", "WARNING")

# Telegram front end, only needed for bot.py
TELEGRAM_BOT_TOKEN = os.getenv("TELEGRAM_BOT_TOKEN", "")
