# Tests for API module