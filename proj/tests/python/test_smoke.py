import json
import os
import signal
import socket
import subprocess
import time

import pytest

import gestura


def test_intents():
    assert gestura.parse_intent("play music")["intent"] == "MediaPlayPause"
    assert gestura.parse_intent("battery status")["intent"] == "BatteryStatus"
    yt = gestura.parse_intent("search lo-fi beats on youtube")
    assert yt == {"intent": "YoutubeSearch", "text": "lo-fi beats", "amount": 0}
    assert gestura.parse_intent("increase brightness")["amount"] == 10
    assert gestura.normalize("  Play   Music! ") == ["play", "music"]


def test_plan_intent():
    lines = gestura.plan_intent("search cats on youtube", 7)
    assert json.loads(lines[0]) == {
        "t": 7,
        "action": "OpenUrl",
        "args": {"url": "https://www.youtube.com/results?search_query=cats"},
    }


def test_mapping_and_smoothing():
    assert gestura.map_to_screen(0.1, 0.2) == (1919, 135)
    assert gestura.map_to_screen(0.1, 0.2, mirror=False) == (0, 135)
    p = gestura.Pointer(100, 100)
    assert p.smooth(200, 200) == (120, 120)
    q = gestura.Pointer(100, 100)
    assert q.smooth(101, 100) is None


def test_synthetic_eval():
    frames, labels = gestura.synthesize_suite(sigma=0.0, seed=1)
    report = gestura.evaluate(frames, labels)
    assert report["overall"] == 100.0
    assert set(report["gestures"]) == {"move", "left_click", "right_click", "scroll_up", "scroll_down"}
    assert gestura.fingers_up(frames[0]) == "00000"


def test_engine_and_errors():
    frames, _ = gestura.synthesize_suite(reps=1)
    engine = gestura.GestureEngine(stable_frames=3)
    kinds = {engine.push(f)["kind"] for f in frames}
    assert {"Move", "LeftClick", "RightClick", "Scroll"} <= kinds
    with pytest.raises(gestura.GesturaError) as err:
        gestura.parse_frame('{"t":1,"hand":"Right","lm":[]}')
    assert err.value.code == "WrongArity"
    assert err.value.exit_code == 4


def test_replay_is_deterministic(tmp_path):
    frames, _ = gestura.synthesize_suite(reps=1)
    src = tmp_path / "frames.jsonl"
    src.write_text("\n".join(frames) + "\n")
    a, b = tmp_path / "a.jsonl", tmp_path / "b.jsonl"
    metrics = json.loads(gestura.replay(str(src), str(a)))
    gestura.replay(str(src), str(b))
    assert metrics["frames"] == len(frames)
    assert a.read_bytes() == b.read_bytes() and a.stat().st_size > 0


def test_empty_text_is_unknown():
    assert gestura.parse_intent("") == {"intent": "Unknown", "text": "", "amount": 0}


@pytest.mark.skipif("GESTURA_CLI" not in os.environ, reason="CLI path not provided")
def test_tcp_session(tmp_path):
    with socket.socket() as probe:
        probe.bind(("127.0.0.1", 0))
        port = probe.getsockname()[1]
    frames, _ = gestura.synthesize_suite(reps=1)
    out = tmp_path / "log.jsonl"
    proc = subprocess.Popen(
        [os.environ["GESTURA_CLI"], "run", "--source", f"tcp:127.0.0.1:{port}",
         "--backend", "mock", "--out", str(out)],
        stderr=subprocess.PIPE, text=True)
    try:
        deadline = time.monotonic() + 10
        while True:
            try:
                conn = socket.create_connection(("127.0.0.1", port), timeout=1)
                break
            except OSError:
                if time.monotonic() > deadline:
                    raise
                time.sleep(0.05)
        with conn:
            for line in frames:
                conn.sendall((line + "\n").encode())
                time.sleep(0.002)
        time.sleep(0.3)
        proc.send_signal(signal.SIGINT)
        _, err = proc.communicate(timeout=10)
    finally:
        if proc.poll() is None:
            proc.kill()
    assert proc.returncode == 0, err
    assert "frames=" in err
    assert out.stat().st_size > 0
