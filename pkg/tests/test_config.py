import logging
import os
import unittest
from unittest.mock import patch

from qh_covers.config import DEFAULT_CAP, Settings, configure_logging
from qh_covers.Core.exceptions import InvalidInputError


class TestSettings(unittest.TestCase):

    def test_defaults(self):
        with patch.dict(os.environ, {}, clear=True):
            settings = Settings.from_env()
        self.assertEqual(settings.cap, DEFAULT_CAP)
        self.assertIsNone(settings.log_level)
        self.assertGreaterEqual(settings.workers, 1)
        self.assertLessEqual(settings.workers, 4)

    def test_environment_values(self):
        env = {"QHC_WORKERS": "3", "QHC_CAP": "5", "QHC_LOG_LEVEL": "debug", "QHC_MAX_TABLE_BYTES": "1024"}
        with patch.dict(os.environ, env, clear=True):
            settings = Settings.from_env()
        self.assertEqual(settings, Settings(workers=3, cap=5, log_level="DEBUG", max_table_bytes=1024))

    def test_invalid_environment(self):
        for env in ({"QHC_CAP": "1"}, {"QHC_WORKERS": "many"}, {"QHC_WORKERS": "0"}, {"QHC_LOG_LEVEL": "LOUD"}):
            with patch.dict(os.environ, env, clear=True):
                with self.assertRaises(InvalidInputError):
                    Settings.from_env()

    def test_blank_values_fall_back(self):
        with patch.dict(os.environ, {"QHC_CAP": " ", "QHC_LOG_LEVEL": ""}, clear=True):
            settings = Settings.from_env()
        self.assertEqual(settings.cap, DEFAULT_CAP)
        self.assertIsNone(settings.log_level)

    def test_override_ignores_none(self):
        settings = Settings(workers=2, cap=6)
        self.assertEqual(settings.override(workers=None, cap=3), Settings(workers=2, cap=3))


class TestConfigureLogging(unittest.TestCase):

    @patch("qh_covers.config.logging.basicConfig")
    def test_verbosity_levels(self, mock_basic):
        configure_logging(Settings(), 0)
        self.assertEqual(mock_basic.call_args.kwargs["level"], logging.WARNING)
        configure_logging(Settings(), 1)
        self.assertEqual(mock_basic.call_args.kwargs["level"], logging.INFO)
        configure_logging(Settings(), 5)
        self.assertEqual(mock_basic.call_args.kwargs["level"], logging.DEBUG)

    @patch("qh_covers.config.logging.basicConfig")
    def test_environment_level_wins(self, mock_basic):
        configure_logging(Settings(log_level="ERROR"), 2)
        self.assertEqual(mock_basic.call_args.kwargs["level"], logging.ERROR)


if __name__ == "__main__":
    unittest.main()
