import asyncio
from types import SimpleNamespace

from handlers.calculator import (
    MAX_REPLY,
    chat_context,
    cmd_iter,
    cmd_mode,
    cmd_terms,
    evaluate_message,
)
from models import Context, ScalarMode


class FakeMessage:
    def __init__(self, text: str = "") -> None:
        self.text = text
        self.replies: list[str] = []

    async def reply_text(self, text: str) -> None:
        self.replies.append(text)


def make_update(text: str = ""):
    return SimpleNamespace(message=FakeMessage(text), effective_chat=SimpleNamespace(id=42))


def test_evaluate_message():
    ctx = Context(max_terms=5)
    assert evaluate_message("x + x", ctx) == "2*x"
    assert evaluate_message("   ", ctx) == "Empty expression."
    assert evaluate_message("log(-x)", ctx).startswith("error[NonPositiveArgument]")


def test_long_replies_are_cut(monkeypatch):
    monkeypatch.setattr("handlers.calculator.render_value", lambda value: "x" * (MAX_REPLY + 10))
    reply = evaluate_message("x", Context())
    assert len(reply) == MAX_REPLY + 2


def test_chat_context_is_stored_per_chat():
    user_data: dict = {}
    ctx = chat_context(user_data)
    assert user_data["kernel_context"] is ctx
    assert chat_context(user_data) is ctx


def test_mode_and_terms_commands():
    user_data: dict = {}
    update = make_update()
    context = SimpleNamespace(args=["float"], user_data=user_data)
    asyncio.run(cmd_mode(update, context))
    assert user_data["kernel_context"].scalar_mode is ScalarMode.FLOAT

    context.args = ["12"]
    asyncio.run(cmd_terms(update, context))
    assert user_data["kernel_context"].max_terms == 12
    assert user_data["kernel_context"].scalar_mode is ScalarMode.FLOAT

    context.args = ["0"]
    asyncio.run(cmd_terms(update, context))
    assert update.message.replies[-1].startswith("Usage")


def test_iter_command_replies_with_iterate():
    update = make_update()
    context = SimpleNamespace(args=["x", "+", "1", "3"], user_data={"kernel_context": Context(max_terms=5)})
    asyncio.run(cmd_iter(update, context))
    assert update.message.replies == ["x + 3"]

    context.args = ["x"]
    asyncio.run(cmd_iter(update, context))
    assert update.message.replies[-1].startswith("Usage")
