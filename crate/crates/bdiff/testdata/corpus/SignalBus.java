package net.example.events;

import java.util.List;
import java.util.Map;
import java.util.concurrent.ConcurrentHashMap;
import java.util.concurrent.CopyOnWriteArrayList;
import java.util.concurrent.atomic.AtomicLong;
import java.util.function.Consumer;

/** In-process publish/subscribe with per-topic ordering. */
public final class SignalBus {

    @FunctionalInterface
    public interface Subscription extends AutoCloseable {
        @Override
        void close();
    }

    private static final class Listener {
        final long token;
        final Consumer<Object> handler;

        Listener(long token, Consumer<Object> handler) {
            this.token = token;
            this.handler = handler;
        }
    }

    private final Map<String, List<Listener>> listenersByTopic = new ConcurrentHashMap<>();
    private final AtomicLong tokenSource = new AtomicLong(1);
    private final AtomicLong deliveredCount = new AtomicLong(0);
    private final AtomicLong droppedCount = new AtomicLong(0);

    public Subscription subscribe(String topic, Consumer<Object> handler) {
        long token = tokenSource.getAndIncrement();
        Listener listener = new Listener(token, handler);
        listenersByTopic
            .computeIfAbsent(topic, unused -> new CopyOnWriteArrayList<>())
            .add(listener);
        return () -> unsubscribe(topic, token);
    }

    private void unsubscribe(String topic, long token) {
        List<Listener> listeners = listenersByTopic.get(topic);
        if (listeners == null) {
            return;
        }
        listeners.removeIf(candidate -> candidate.token == token);
        if (listeners.isEmpty()) {
            listenersByTopic.remove(topic, listeners);
        }
    }

    public int publish(String topic, Object payload) {
        List<Listener> listeners = listenersByTopic.get(topic);
        if (listeners == null || listeners.isEmpty()) {
            droppedCount.incrementAndGet();
            return 0;
        }
        int reached = 0;
        for (Listener listener : listeners) {
            try {
                listener.handler.accept(payload);
                reached++;
            } catch (RuntimeException failure) {
                droppedCount.incrementAndGet();
            }
        }
        deliveredCount.addAndGet(reached);
        return reached;
    }

    public long delivered() {
        return deliveredCount.get();
    }

    public long dropped() {
        return droppedCount.get();
    }

    public int topicCount() {
        return listenersByTopic.size();
    }
}
