"""Calculator handlers — /start, /help, /eval, /abel, /inv, /iter, /mode, /terms, free-text eval."""

from __future__ import annotations

import asyncio
import logging

from telegram import Update
from telegram.ext import (
    Application,
    CommandHandler,
    ContextTypes,
    MessageHandler,
    filters,
)

from errors import TransseriesError
from expression import evaluate_text
from cli import render_value
from models import Context, ScalarMode

logger = logging.getLogger(__name__)

# Telegram messages are capped at 4096 characters
MAX_REPLY = 4000

HELP_TEXT = (
    "Commands:\n"
    "/eval <expr> — evaluate an expression\n"
    "/abel <f> — Abel function V with V∘f = V + 1\n"
    "/inv <f> — compositional inverse\n"
    "/iter <f> <r> — fractional iterate f^[r]\n"
    "/mode rational|float — coefficient backend\n"
    "/terms N — truncation budget\n\n"
    "Syntax: x, + - * / ^, log, exp, log^k, f @ g (composition), "
    "inv(f), abel(f), iter(f, r), conj(f, g), cmp(s, t), diff(s), integral(s).\n"
    "Any plain message is evaluated as an expression."
)


# ---------------------------------------------------------------------------
# Pure helpers
# ---------------------------------------------------------------------------

def chat_context(user_data: dict) -> Context:
    ctx = user_data.get("kernel_context")
    if ctx is None:
        ctx = Context.from_config()
        user_data["kernel_context"] = ctx
    return ctx


def evaluate_message(text: str, ctx: Context) -> str:
    """Evaluate and render, turning kernel errors into a one-line reply."""
    text = text.strip()
    if not text:
        return "Empty expression."
    with ctx.activate():
        try:
            reply = render_value(evaluate_text(text))
        except TransseriesError as error:
            logger.info("evaluation of %r failed: %s", text, error.code)
            return error.diagnostic()
    if len(reply) > MAX_REPLY:
        reply = reply[:MAX_REPLY] + " …"
    return reply


async def _reply_with(update: Update, context: ContextTypes.DEFAULT_TYPE, text: str) -> None:
    ctx = chat_context(context.user_data)
    try:
        reply = await asyncio.to_thread(evaluate_message, text, ctx)
    except Exception:
        logger.exception("Evaluation crashed")
        reply = "Internal error, the expression could not be evaluated."
    await update.message.reply_text(reply)


# ---------------------------------------------------------------------------
# /start, /help
# ---------------------------------------------------------------------------

async def cmd_start(update: Update, context: ContextTypes.DEFAULT_TYPE) -> None:
    ctx = chat_context(context.user_data)
    await update.message.reply_text(
        f"Transseries calculator ({ctx.scalar_mode.value}, {ctx.max_terms} terms).\n\n"
        + HELP_TEXT
    )


async def cmd_help(update: Update, context: ContextTypes.DEFAULT_TYPE) -> None:
    await update.message.reply_text(HELP_TEXT)


# ---------------------------------------------------------------------------
# Evaluation commands
# ---------------------------------------------------------------------------

async def cmd_eval(update: Update, context: ContextTypes.DEFAULT_TYPE) -> None:
    if not context.args:
        await update.message.reply_text("Usage: /eval <expr>")
        return
    await _reply_with(update, context, " ".join(context.args))


async def cmd_abel(update: Update, context: ContextTypes.DEFAULT_TYPE) -> None:
    if not context.args:
        await update.message.reply_text("Usage: /abel <f>")
        return
    await _reply_with(update, context, f"abel({' '.join(context.args)})")


async def cmd_inv(update: Update, context: ContextTypes.DEFAULT_TYPE) -> None:
    if not context.args:
        await update.message.reply_text("Usage: /inv <f>")
        return
    await _reply_with(update, context, f"inv({' '.join(context.args)})")


async def cmd_iter(update: Update, context: ContextTypes.DEFAULT_TYPE) -> None:
    if not context.args or len(context.args) < 2:
        await update.message.reply_text("Usage: /iter <f> <r>")
        return
    f, r = " ".join(context.args[:-1]), context.args[-1]
    await _reply_with(update, context, f"iter({f}, {r})")


async def handle_text(update: Update, context: ContextTypes.DEFAULT_TYPE) -> None:
    await _reply_with(update, context, update.message.text)


# ---------------------------------------------------------------------------
# Settings
# ---------------------------------------------------------------------------

async def cmd_mode(update: Update, context: ContextTypes.DEFAULT_TYPE) -> None:
    args = context.args
    try:
        mode = ScalarMode(args[0].lower()) if args else None
    except ValueError:
        mode = None
    if mode is None:
        await update.message.reply_text("Usage: /mode rational|float")
        return
    ctx = chat_context(context.user_data).replace(scalar_mode=mode)
    context.user_data["kernel_context"] = ctx
    logger.info("chat %s switched to %s", update.effective_chat.id, mode.value)
    await update.message.reply_text(f"Coefficients: {mode.value}.")


async def cmd_terms(update: Update, context: ContextTypes.DEFAULT_TYPE) -> None:
    args = context.args
    if not args or not args[0].isdigit() or not 1 <= int(args[0]) <= 200:
        await update.message.reply_text("Usage: /terms N (1..200)")
        return
    ctx = chat_context(context.user_data).replace(max_terms=int(args[0]))
    context.user_data["kernel_context"] = ctx
    await update.message.reply_text(f"Keeping at most {ctx.max_terms} terms.")


# ---------------------------------------------------------------------------
# Register
# ---------------------------------------------------------------------------

def register(app: Application) -> None:
    app.add_handler(CommandHandler("start", cmd_start))
    app.add_handler(CommandHandler("help", cmd_help))
    app.add_handler(CommandHandler("eval", cmd_eval))
    app.add_handler(CommandHandler("abel", cmd_abel))
    app.add_handler(CommandHandler("inv", cmd_inv))
    app.add_handler(CommandHandler("iter", cmd_iter))
    app.add_handler(CommandHandler("mode", cmd_mode))
    app.add_handler(CommandHandler("terms", cmd_terms))
    app.add_handler(MessageHandler(filters.TEXT & ~filters.COMMAND, handle_text))
