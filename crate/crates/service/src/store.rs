use std::collections::HashMap;
use std::sync::{Arc, Mutex, RwLock};
use std::time::{Duration, Instant};

use mapvoice_core::Session;

pub(crate) struct SessionSlot {
    /// Held for the whole of an action, which serializes a session's actions.
    pub session: tokio::sync::Mutex<Session>,
    dataset_id: String,
    last_used: Mutex<Instant>,
}

impl SessionSlot {
    pub fn dataset_id(&self) -> &str {
        &self.dataset_id
    }

    fn touch(&self) {
        *self.last_used.lock().unwrap() = Instant::now();
    }

    fn idle_for(&self, now: Instant) -> Duration {
        now.saturating_duration_since(*self.last_used.lock().unwrap())
    }
}

pub(crate) struct SessionStore {
    slots: RwLock<HashMap<String, Arc<SessionSlot>>>,
    ttl: Duration,
}

impl SessionStore {
    pub fn new(ttl: Duration) -> Self {
        Self {
            slots: RwLock::new(HashMap::new()),
            ttl,
        }
    }

    pub fn len(&self) -> usize {
        self.slots.read().unwrap().len()
    }

    pub fn insert(&self, dataset_id: &str, session: Session) -> Arc<SessionSlot> {
        self.sweep();
        let slot = Arc::new(SessionSlot {
            dataset_id: dataset_id.to_string(),
            session: tokio::sync::Mutex::new(session),
            last_used: Mutex::new(Instant::now()),
        });
        let id = slot
            .session
            .try_lock()
            .expect("fresh session")
            .id()
            .to_string();
        self.slots.write().unwrap().insert(id, slot.clone());
        slot
    }

    pub fn get(&self, id: &str) -> Option<Arc<SessionSlot>> {
        self.sweep();
        let slot = self.slots.read().unwrap().get(id).cloned()?;
        slot.touch();
        Some(slot)
    }

    /// Drops sessions idle longer than the ttl.
    fn sweep(&self) {
        let now = Instant::now();
        let expired = {
            let slots = self.slots.read().unwrap();
            slots.values().any(|s| s.idle_for(now) > self.ttl)
        };
        if expired {
            self.slots
                .write()
                .unwrap()
                .retain(|_, s| s.idle_for(now) <= self.ttl);
        }
    }
}
