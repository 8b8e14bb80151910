package net.example.resilience;

import java.time.Duration;
import java.util.ArrayList;
import java.util.List;
import java.util.Random;
import java.util.concurrent.Callable;

/**
 * Retry with exponential backoff and jitter.
 */
public final class RetryPolicy {

    public static final int DEFAULT_MAX_ATTEMPTS = 4;
    public static final Duration DEFAULT_INITIAL_DELAY = Duration.ofMillis(120);

    private final int maxAttempts;
    private final Duration initialDelay;
    private final double backoffMultiplier;
    private final double jitterFraction;
    private final List<Class<? extends Exception>> retryableTypes;
    private final Random random;

    private RetryPolicy(Builder builder) {
        this.maxAttempts = builder.maxAttempts;
        this.initialDelay = builder.initialDelay;
        this.backoffMultiplier = builder.backoffMultiplier;
        this.jitterFraction = builder.jitterFraction;
        this.retryableTypes = List.copyOf(builder.retryableTypes);
        this.random = new Random(builder.randomSeed);
    }

    public static Builder builder() {
        return new Builder();
    }

    public <T> T execute(Callable<T> operation) throws Exception {
        Exception lastFailure = null;
        for (int attempt = 1; attempt <= maxAttempts; attempt++) {
            try {
                return operation.call();
            } catch (Exception failure) {
                lastFailure = failure;
                if (!isRetryable(failure) || attempt == maxAttempts) {
                    throw failure;
                }
                sleepQuietly(delayForAttempt(attempt));
            }
        }
        throw lastFailure;
    }

    boolean isRetryable(Exception failure) {
        if (retryableTypes.isEmpty()) {
            return true;
        }
        for (Class<? extends Exception> type : retryableTypes) {
            if (type.isInstance(failure)) {
                return true;
            }
        }
        return false;
    }

    Duration delayForAttempt(int attempt) {
        double scale = Math.pow(backoffMultiplier, attempt - 1);
        double baseMillis = initialDelay.toMillis() * scale;
        double jitterSpan = baseMillis * jitterFraction;
        double withJitter = baseMillis + (random.nextDouble() * 2.0 - 1.0) * jitterSpan;
        long bounded = Math.max(1L, Math.round(withJitter));
        return Duration.ofMillis(bounded);
    }

    private static void sleepQuietly(Duration pause) {
        try {
            Thread.sleep(pause.toMillis());
        } catch (InterruptedException interrupted) {
            Thread.currentThread().interrupt();
        }
    }

    public static final class Builder {
        private int maxAttempts = DEFAULT_MAX_ATTEMPTS;
        private Duration initialDelay = DEFAULT_INITIAL_DELAY;
        private double backoffMultiplier = 2.0;
        private double jitterFraction = 0.25;
        private long randomSeed = 42L;
        private final List<Class<? extends Exception>> retryableTypes = new ArrayList<>();

        public Builder maxAttempts(int value) {
            if (value < 1) {
                throw new IllegalArgumentException("attempts must be at least 1");
            }
            this.maxAttempts = value;
            return this;
        }

        public Builder initialDelay(Duration value) {
            this.initialDelay = value;
            return this;
        }

        public Builder backoffMultiplier(double value) {
            if (value < 1.0) {
                throw new IllegalArgumentException("multiplier must not shrink delays");
            }
            this.backoffMultiplier = value;
            return this;
        }

        public Builder jitterFraction(double value) {
            this.jitterFraction = Math.max(0.0, Math.min(1.0, value));
            return this;
        }

        public Builder randomSeed(long value) {
            this.randomSeed = value;
            return this;
        }

        public Builder retryOn(Class<? extends Exception> type) {
            this.retryableTypes.add(type);
            return this;
        }

        public RetryPolicy build() {
            return new RetryPolicy(this);
        }
    }
}
