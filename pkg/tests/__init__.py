"""Test suite for the ECG segmentation toolkit."""
