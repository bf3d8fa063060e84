"""Register all handlers with the Application."""

from telegram.ext import Application

from handlers.calculator import register as register_calculator


def register_handlers(app: Application) -> None:
    register_calculator(app)
