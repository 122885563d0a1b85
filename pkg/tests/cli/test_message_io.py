"""メッセージ入出力とトランスクリプト出力のテスト"""

import pytest

from src.cli.message_io import INLINE_BITS_LIMIT, format_message, read_message, write_output
from src.cli.transcript import TRANSCRIPT_HEADER, render_stage, render_transcript
from src.core.exceptions import ValidationError
from src.data_models.attack_models import AttackTranscript, StageRecord
from src.data_models.hash_models import BitString


class TestReadMessage:
    """read_message のテストクラス"""

    def test_bits(self):
        assert read_message("0110").bits == "0110"

    def test_len_hex(self):
        assert read_message("6:5").bits == "000101"

    def test_empty(self):
        assert read_message("").bits == ""

    def test_file(self, tmp_path):
        path = tmp_path / "m.txt"
        path.write_text("1010\n", encoding="utf-8")
        assert read_message(f"@{path}").bits == "1010"

    def test_file_with_len_hex(self, tmp_path):
        path = tmp_path / "m.hex"
        path.write_text("300:ff", encoding="utf-8")
        m = read_message(f"@{path}")
        assert len(m) == 300
        assert m.bits.endswith("1" * 8)

    def test_missing_file(self, tmp_path):
        with pytest.raises(ValidationError, match="cannot read message file"):
            read_message(f"@{tmp_path / 'nope'}")

    def test_malformed(self):
        with pytest.raises(ValidationError, match="only '0' and '1'"):
            read_message("01x")


class TestFormatMessage:
    """format_message / write_output のテストクラス"""

    def test_short_message_inline(self):
        assert format_message(BitString(bits="0110")) == "0110"

    def test_long_message_as_len_hex(self):
        m = BitString(bits="1" * (INLINE_BITS_LIMIT + 4))
        text = format_message(m)
        assert text.startswith(f"{INLINE_BITS_LIMIT + 4}:")
        assert read_message(text) == m

    def test_write_stdout(self, capsys):
        write_output("a\nb\n")
        assert capsys.readouterr().out == "a\nb\n"

    def test_write_file(self, tmp_path, capsys):
        path = tmp_path / "out.txt"
        write_output("result\n", str(path))
        assert path.read_text(encoding="utf-8") == "result\n"
        assert capsys.readouterr().out == ""


class TestTranscript:
    """トランスクリプト出力のテストクラス"""

    def test_render_stage(self):
        record = StageRecord(stage="decode", inputs={"digest": "63,27"}, outputs={"r": 36, "s": 27},
                             elapsed_ms=1.5)
        assert render_stage(record) == "stage: decode digest=63,27 -> r=36 s=27"
        assert render_stage(record, record_timings=True) == "stage: decode digest=63,27 -> r=36 s=27 elapsed_ms=1.5"

    def test_render_stage_with_verdict(self):
        record = StageRecord(stage="verify", verdict="pass")
        assert render_stage(record) == "stage: verify -> [pass]"

    def test_render_transcript(self):
        transcript = AttackTranscript(seed=3)
        transcript.add("decode", {"digest": "1,0"}, {"r": 1, "s": 0})
        text = render_transcript("second-preimage", [("seed", 3), ("L", 0)], transcript, [("message", "")])
        assert text == (
            f"{TRANSCRIPT_HEADER}\n"
            "command: second-preimage\n"
            "seed: 3\n"
            "L: 0\n"
            "stage: decode digest=1,0 -> r=1 s=0\n"
            "message: \n"
        )

    def test_render_without_transcript(self):
        assert render_transcript("verify", [], results=[("claim", "H collision holds")]).splitlines() == [
            TRANSCRIPT_HEADER, "command: verify", "claim: H collision holds",
        ]
