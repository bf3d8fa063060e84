"""Transseries bot — Telegram entry point for the calculator."""

import logging

import mpmath
from telegram.ext import Application

from config import PRECISION_BITS, TELEGRAM_BOT_TOKEN
from handlers import register_handlers

logging.basicConfig(
    format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
    level=logging.INFO,
)
logger = logging.getLogger(__name__)


async def post_init(app: Application) -> None:
    """Called after the Application is built — fix the float working precision."""
    mpmath.mp.prec = PRECISION_BITS
    logger.info("mpmath precision set to %d bits", PRECISION_BITS)


def main() -> None:
    if not TELEGRAM_BOT_TOKEN:
        raise SystemExit("TELEGRAM_BOT_TOKEN is not set")
    app = (
        Application.builder()
        .token(TELEGRAM_BOT_TOKEN)
        .post_init(post_init)
        .build()
    )

    register_handlers(app)

    logger.info("Starting transseries bot…")
    app.run_polling(drop_pending_updates=True)


if __name__ == "__main__":
    main()
